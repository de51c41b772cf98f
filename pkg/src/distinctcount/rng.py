"""SplitMix64, the sampling generator behind ``verify``.

Fixed here (rather than ``random``) so that a sweep is reproducible from its
64-bit seed in any language: the state advances by 0x9E3779B97F4A7C15, the
output is the standard SplitMix64 finalizer, and ``below(n)`` rejects draws
at or above the largest multiple of n that fits in 64 bits before reducing.
"""

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next()
            if x < limit:
                return x % n
