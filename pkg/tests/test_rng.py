from distinctcount.rng import SplitMix64


def test_reference_vector():
    r = SplitMix64(1234567)
    assert [r.next() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821]


def test_below_range_and_determinism():
    a, b = SplitMix64(42), SplitMix64(42)
    xs = [a.below(7) for _ in range(1000)]
    assert xs == [b.below(7) for _ in range(1000)]
    assert set(xs) == set(range(7))


def test_below_one():
    assert SplitMix64(0).below(1) == 0
