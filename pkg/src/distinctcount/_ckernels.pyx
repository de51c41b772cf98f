# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Mirrors distinctcount._kernels_py exactly."""
from array import array
from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int64_t

BACKEND = "cython"

# primes below 2**31 so that residue products fit in 64 bits
_PRIMES = []


def _is_prime(n):
    if n < 2:
        return False
    for f in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % f == 0:
            return n == f
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_covering(bound):
    prod = 1
    i = 0
    while prod <= 2 * bound:
        if i == len(_PRIMES):
            c = _PRIMES[len(_PRIMES) - 1] - 2 if _PRIMES else (1 << 31) - 1
            while not _is_prime(c):
                c -= 2
            _PRIMES.append(c)
        prod *= _PRIMES[i]
        i += 1
    return _PRIMES[:i]


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef inline int _popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef struct _Sieve:
    const unsigned char *zero
    const uint64_t *cand_ptr
    const uint64_t *cands
    uint64_t *F
    uint64_t wsz[64]
    uint64_t P


cdef uint64_t _unset = <uint64_t>-1


cdef uint64_t _weight_at(_Sieve *st, uint64_t S) noexcept nogil:
    # only masks reachable from the full set by peeling zero-sum blocks are visited
    cdef uint64_t low, rest, sub, T, acc, j, lo, hi
    cdef int b
    if st.F[S] != _unset:
        return st.F[S]
    low = S & (~S + 1)
    rest = S ^ low
    acc = 0
    b = _popcount(low - 1)
    lo = st.cand_ptr[b]
    hi = st.cand_ptr[b + 1]
    if hi - lo <= (1ULL << _popcount(rest)):
        for j in range(lo, hi):
            T = st.cands[j]
            if T & S == T:
                acc = (acc + st.wsz[_popcount(T)] * _weight_at(st, S ^ T)) % st.P
    else:
        sub = rest
        while True:
            T = sub | low
            if st.zero[T]:
                acc = (acc + st.wsz[_popcount(T)] * _weight_at(st, S ^ T)) % st.P
            if sub == 0:
                break
            sub = (sub - 1) & rest
    st.F[S] = acc
    return acc


cdef uint64_t _weight_mod(const unsigned char[:] zero, const uint64_t[:] cand_ptr,
                          const uint64_t[:] cands, int k, uint64_t q, uint64_t P):
    cdef _Sieve st
    cdef uint64_t full = (1ULL << k) - 1
    cdef uint64_t S, fact, res
    cdef int s
    st.F = <uint64_t *> malloc((full + 1) * sizeof(uint64_t))
    if st.F == NULL:
        raise MemoryError()
    st.zero = &zero[0]
    st.cand_ptr = &cand_ptr[0]
    st.cands = &cands[0]
    st.P = P
    fact = 1
    st.wsz[0] = 0
    for s in range(1, k + 1):
        if s > 1:
            fact = fact * <uint64_t>(s - 1) % P
        res = fact * (q % P) % P
        st.wsz[s] = res if (s - 1) % 2 == 0 else (P - res) % P
    with nogil:
        for S in range(full + 1):
            st.F[S] = _unset
        st.F[0] = 1
        res = _weight_at(&st, full)
    free(st.F)
    return res


def zero_sum_cycle_weight(zero, int k, q):
    """Signed weight of all permutations of {0..k-1} whose cycles are zero-sum.

    Exact result reconstructed by CRT from residues modulo 31-bit primes.
    """
    cdef const unsigned char[:] z = bytes(bytearray(1 if v else 0 for v in zero))
    by_low = [[] for _ in range(k + 1)]
    for t in range(1, 1 << k):
        if z[t]:
            by_low[(t & -t).bit_length() - 1].append(t)
    ptr = array("Q", [0])
    flat = array("Q")
    for lst in by_low:
        flat.extend(lst)
        ptr.append(len(flat))
    if not len(flat):
        flat.append(0)
    cdef const uint64_t[:] ptr_v = ptr
    cdef const uint64_t[:] flat_v = flat
    bound = 1
    for i in range(k):
        bound *= q + i
    primes = _primes_covering(bound)
    M = 1
    x = 0
    for P in primes:
        r = _weight_mod(z, ptr_v, flat_v, k, q % P, P)
        # fold (x mod M) with (r mod P)
        t = (r - x) * pow(M, -1, P) % P
        x += M * t
        M *= P
    if x > M // 2:
        x -= M
    return x


cdef struct _Walk:
    int q
    int depth
    int ndom
    const int *add
    const int *rows
    const int *domain
    const int *ptr
    const int *vals
    char *used


cdef int64_t _walk(_Walk *w, int level, int s) noexcept nogil:
    cdef int64_t total = 0
    cdef int i, x, t, v
    if level == w.depth:
        for i in range(w.ptr[s], w.ptr[s + 1]):
            if not w.used[w.vals[i]]:
                total += 1
        return total
    for i in range(w.ndom):
        x = w.domain[i]
        if w.used[x]:
            continue
        v = w.rows[level * w.q + x]
        if w.add != NULL:
            t = w.add[s * w.q + v]
        else:
            t = s + v
            if t >= w.q:
                t -= w.q
        w.used[x] = 1
        total += _walk(w, level + 1, t)
        w.used[x] = 0
    return total


def injective_count(int q, add, rows, domain, bucket_ptr, bucket_vals):
    """Count injective tuples; see _kernels_py.injective_count."""
    cdef _Walk w
    cdef const int[:] add_v
    cdef const int[:] rows_v
    cdef const int[:] dom_v = array("i", domain)
    cdef const int[:] ptr_v = array("i", bucket_ptr)
    cdef const int[:] vals_v = array("i", list(bucket_vals) or [0])
    cdef int64_t total
    cdef int i
    flat = array("i")
    for r in rows:
        flat.extend(r)
    if not len(flat):
        flat.append(0)
    rows_v = flat
    w.q = q
    w.depth = len(rows)
    w.ndom = len(domain)
    w.rows = &rows_v[0]
    w.domain = &dom_v[0] if len(domain) else NULL
    w.ptr = &ptr_v[0]
    w.vals = &vals_v[0]
    if add is None:
        w.add = NULL
    else:
        add_v = array("i", add)
        w.add = &add_v[0]
    w.used = <char *> malloc(q)
    if w.used == NULL:
        raise MemoryError()
    for i in range(q):
        w.used[i] = 0
    with nogil:
        total = _walk(&w, 0, 0)
    free(w.used)
    return int(total)


cdef struct _Parts:
    int k
    int nlabels
    const int *labels
    const int *meet
    int64_t *wsz
    int64_t *acc
    uint64_t masks[64]
    int sizes[64]


cdef void _parts(_Parts *st, int i, int nb) noexcept nogil:
    cdef int j, lab, nb2
    cdef int64_t wt
    cdef uint64_t bit
    if i == st.k:
        lab = st.labels[st.masks[0]]
        wt = st.wsz[st.sizes[0]]
        for j in range(1, nb):
            lab = st.meet[lab * st.nlabels + st.labels[st.masks[j]]]
            wt *= st.wsz[st.sizes[j]]
        st.acc[nb * st.nlabels + lab] += wt
        return
    bit = 1ULL << i
    for j in range(nb + 1):
        st.masks[j] |= bit
        st.sizes[j] += 1
        nb2 = nb if j < nb else nb + 1
        _parts(st, i + 1, nb2)
        st.masks[j] ^= bit
        st.sizes[j] -= 1


def partition_profile(labels, meet, int nlabels, int k):
    """Signed block weights over all set partitions; see _kernels_py."""
    cdef _Parts st
    cdef const int[:] lab_v = array("i", labels)
    cdef const int[:] meet_v = array("i", meet)
    cdef int64_t wsz[64]
    cdef int s
    acc = [[0] * nlabels for _ in range(k + 1)]
    if k == 0:
        return acc
    cdef int64_t *buf = <int64_t *> malloc((k + 1) * nlabels * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    for s in range((k + 1) * nlabels):
        buf[s] = 0
    wsz[0] = 0
    wsz[1] = 1
    for s in range(2, k + 1):
        wsz[s] = -wsz[s - 1] * (s - 1)
    st.k = k
    st.nlabels = nlabels
    st.labels = &lab_v[0]
    st.meet = &meet_v[0]
    st.wsz = wsz
    st.acc = buf
    for s in range(k):
        st.masks[s] = 0
        st.sizes[s] = 0
    with nogil:
        _parts(&st, 0, 0)
    for s in range(k + 1):
        acc[s] = [int(buf[s * nlabels + j]) for j in range(nlabels)]
    free(buf)
    return acc
