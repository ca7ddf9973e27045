# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels: exact mirror of `_kernels_py`.

Same candidate order, same pruning, same node accounting; the two backends
must return identical (value, witness, nodes, truncated) tuples. See
`_kernels_py` for the algorithm documentation.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc, PyMem_Realloc
from libc.string cimport memcpy, memset

from itertools import combinations

MODE_DS = 0
MODE_FORMATION = 1
MODE_PATTERN = 2

DEF _DS = 0
DEF _FORMATION = 1
DEF _PATTERN = 2

cdef int _MAX_LETTERS = 60
cdef int _MAX_CEILING = 50_000  # also bounds C recursion depth


cdef void* _alloc(size_t nbytes) except NULL:
    cdef void* p = PyMem_Malloc(nbytes if nbytes else 1)
    if p == NULL:
        raise MemoryError()
    return p


cdef class _SeqKernel:
    cdef int mode, n, jeff, s, max_blocks, ceiling
    cdef long long node_budget, nodes
    cdef int length, used_max, blocks_used, best, best_len
    cdef unsigned long long block_mask
    cdef bint truncated, done
    cdef int* tokens
    cdef int* best_tokens
    cdef int* last_pos
    cdef int* undo_c
    cdef int* undo_lp
    cdef int* undo_umax
    cdef int* undo_bused
    cdef unsigned long long* undo_bmask
    # DS state
    cdef int* alt
    cdef int* alt_last
    cdef int* bump_idx
    cdef int* bump_old
    cdef int* bump_start
    # formation state
    cdef int nsubs, max_changes
    cdef unsigned long long* sub_full
    cdef unsigned long long* sub_partial
    cdef int* sub_count
    cdef int* letter_sub_start
    cdef int* letter_sub_data
    cdef int* ch_sub
    cdef unsigned long long* ch_old
    cdef int* ch_completed
    cdef int* ch_start
    # pattern state
    cdef int plen, ru
    cdef int* pattern
    cdef unsigned long long ppow  # (n+1)^ru
    cdef unsigned long long* pstates
    cdef int pstates_top, pstates_cap
    cdef int* pstate_count

    def __cinit__(self, int mode, int n, int j, int ceiling, int s, int r,
                  tuple pattern, int max_blocks, long long node_budget):
        cdef int i, v, idx, depth_cap
        if n < 1 or n > _MAX_LETTERS:
            raise ValueError(f"letter count must be in 1..{_MAX_LETTERS}")
        if ceiling < 0 or ceiling > _MAX_CEILING:
            raise ValueError(f"ceiling must be in 0..{_MAX_CEILING}")
        if max_blocks and mode != _DS:
            raise ValueError("block budgets only apply to DS searches")
        self.mode = mode
        self.n = n
        self.jeff = max(j, 2) if mode == _DS else j
        self.s = s
        self.max_blocks = max_blocks
        self.ceiling = ceiling
        self.node_budget = node_budget
        self.nodes = 0
        self.length = 0
        self.used_max = 0
        self.blocks_used = 0
        self.block_mask = 0
        self.truncated = False
        self.done = False
        depth_cap = ceiling + 1
        self.tokens = <int*> _alloc(depth_cap * sizeof(int))
        self.best_tokens = <int*> _alloc(depth_cap * sizeof(int))
        self.last_pos = <int*> _alloc((n + 1) * sizeof(int))
        memset(self.last_pos, 0, (n + 1) * sizeof(int))
        self.undo_c = <int*> _alloc(depth_cap * sizeof(int))
        self.undo_lp = <int*> _alloc(depth_cap * sizeof(int))
        self.undo_umax = <int*> _alloc(depth_cap * sizeof(int))
        self.undo_bused = <int*> _alloc(depth_cap * sizeof(int))
        self.undo_bmask = <unsigned long long*> _alloc(depth_cap * sizeof(unsigned long long))
        if mode == _DS:
            self.alt = <int*> _alloc((n + 1) * (n + 1) * sizeof(int))
            self.alt_last = <int*> _alloc((n + 1) * (n + 1) * sizeof(int))
            memset(self.alt, 0, (n + 1) * (n + 1) * sizeof(int))
            memset(self.alt_last, 0, (n + 1) * (n + 1) * sizeof(int))
            self.bump_idx = <int*> _alloc(depth_cap * n * sizeof(int))
            self.bump_old = <int*> _alloc(depth_cap * n * sizeof(int))
            self.bump_start = <int*> _alloc((depth_cap + 1) * sizeof(int))
            self.bump_start[0] = 0
        elif mode == _FORMATION:
            subs = list(combinations(range(1, n + 1), r)) if r <= n else []
            self.nsubs = len(subs)
            self.sub_full = <unsigned long long*> _alloc(max(self.nsubs, 1) * sizeof(unsigned long long))
            self.sub_partial = <unsigned long long*> _alloc(max(self.nsubs, 1) * sizeof(unsigned long long))
            self.sub_count = <int*> _alloc(max(self.nsubs, 1) * sizeof(int))
            per_letter = [[] for _ in range(n + 1)]
            for idx, sub in enumerate(subs):
                mask = 0
                for v in sub:
                    mask |= 1 << v
                    per_letter[v].append(idx)
                self.sub_full[idx] = mask
                self.sub_partial[idx] = 0
                self.sub_count[idx] = 0
            self.letter_sub_start = <int*> _alloc((n + 2) * sizeof(int))
            total = sum(len(lst) for lst in per_letter)
            self.letter_sub_data = <int*> _alloc(max(total, 1) * sizeof(int))
            pos = 0
            self.max_changes = 0
            for v in range(n + 1):
                self.letter_sub_start[v] = pos
                for idx in per_letter[v]:
                    self.letter_sub_data[pos] = idx
                    pos += 1
                if len(per_letter[v]) > self.max_changes:
                    self.max_changes = len(per_letter[v])
            self.letter_sub_start[n + 1] = pos
            self.ch_sub = <int*> _alloc(depth_cap * max(self.max_changes, 1) * sizeof(int))
            self.ch_old = <unsigned long long*> _alloc(depth_cap * max(self.max_changes, 1) * sizeof(unsigned long long))
            self.ch_completed = <int*> _alloc(depth_cap * max(self.max_changes, 1) * sizeof(int))
            self.ch_start = <int*> _alloc((depth_cap + 1) * sizeof(int))
            self.ch_start[0] = 0
        elif mode == _PATTERN:
            self.plen = len(pattern)
            self.ru = max(pattern) if self.plen else 0
            if (n + 1) ** self.ru * (self.plen + 1) >= 2**63:
                raise ValueError("pattern alphabet too large for the state encoding")
            self.pattern = <int*> _alloc(max(self.plen, 1) * sizeof(int))
            for i in range(self.plen):
                self.pattern[i] = pattern[i]
            self.ppow = 1
            for i in range(self.ru):
                self.ppow *= n + 1
            self.pstates_cap = 1024
            self.pstates = <unsigned long long*> _alloc(self.pstates_cap * sizeof(unsigned long long))
            self.pstates[0] = 0  # state (k=0, empty mapping)
            self.pstates_top = 1
            self.pstate_count = <int*> _alloc(depth_cap * sizeof(int))
        else:
            raise ValueError(f"unknown mode {mode}")

    def __dealloc__(self):
        PyMem_Free(self.tokens)
        PyMem_Free(self.best_tokens)
        PyMem_Free(self.last_pos)
        PyMem_Free(self.undo_c)
        PyMem_Free(self.undo_lp)
        PyMem_Free(self.undo_umax)
        PyMem_Free(self.undo_bused)
        PyMem_Free(self.undo_bmask)
        if self.mode == _DS:
            PyMem_Free(self.alt)
            PyMem_Free(self.alt_last)
            PyMem_Free(self.bump_idx)
            PyMem_Free(self.bump_old)
            PyMem_Free(self.bump_start)
        elif self.mode == _FORMATION:
            PyMem_Free(self.sub_full)
            PyMem_Free(self.sub_partial)
            PyMem_Free(self.sub_count)
            PyMem_Free(self.letter_sub_start)
            PyMem_Free(self.letter_sub_data)
            PyMem_Free(self.ch_sub)
            PyMem_Free(self.ch_old)
            PyMem_Free(self.ch_completed)
            PyMem_Free(self.ch_start)
        elif self.mode == _PATTERN:
            PyMem_Free(self.pattern)
            PyMem_Free(self.pstates)
            PyMem_Free(self.pstate_count)

    cdef bint _pstate_known(self, unsigned long long code) noexcept:
        cdef int i
        for i in range(self.pstates_top):
            if self.pstates[i] == code:
                return True
        return False

    cdef int _pstate_add(self, unsigned long long code) except -1:
        if self.pstates_top == self.pstates_cap:
            self.pstates_cap *= 2
            self.pstates = <unsigned long long*> PyMem_Realloc(
                self.pstates, self.pstates_cap * sizeof(unsigned long long))
            if self.pstates == NULL:
                raise MemoryError()
        self.pstates[self.pstates_top] = code
        self.pstates_top += 1
        return 0

    cdef int try_push(self, int c) except -1:
        """Append letter c if admissible; 1 on success, 0 otherwise."""
        cdef int pos = self.length + 1
        cdef int lp = self.last_pos[c]
        cdef int n = self.n
        cdef int b, idx, limit, nb, si, k, a, i
        cdef int d = self.length
        cdef unsigned long long bit, pm, code, mcode, tgt, npw, digit, ncode
        cdef int base, top0, snap
        if lp and pos - lp < self.jeff:
            return 0
        if self.mode == _DS:
            if self.max_blocks:
                if self.block_mask == 0 or (self.block_mask >> c) & 1:
                    if self.blocks_used + 1 > self.max_blocks:
                        return 0
            limit = self.s + 1
            base = self.bump_start[d]
            nb = 0
            for b in range(1, n + 1):
                if b == c:
                    continue
                idx = c * (n + 1) + b if c < b else b * (n + 1) + c
                if self.alt_last[idx] != c:
                    if self.alt[idx] + 1 > limit:
                        return 0
                    self.bump_idx[base + nb] = idx
                    self.bump_old[base + nb] = self.alt_last[idx]
                    nb += 1
            for i in range(nb):
                idx = self.bump_idx[base + i]
                self.alt[idx] += 1
                self.alt_last[idx] = c
            self.bump_start[d + 1] = base + nb
            self.undo_bmask[d] = self.block_mask
            self.undo_bused[d] = self.blocks_used
            if self.max_blocks:
                if self.block_mask == 0 or (self.block_mask >> c) & 1:
                    self.blocks_used += 1
                    self.block_mask = (<unsigned long long> 1) << c
                else:
                    self.block_mask |= (<unsigned long long> 1) << c
        elif self.mode == _FORMATION:
            bit = (<unsigned long long> 1) << c
            base = self.ch_start[d]
            nb = 0
            for i in range(self.letter_sub_start[c], self.letter_sub_start[c + 1]):
                si = self.letter_sub_data[i]
                pm = self.sub_partial[si]
                if pm & bit:
                    continue
                if (pm | bit) == self.sub_full[si]:
                    if self.sub_count[si] + 1 >= self.s:
                        return 0
                    self.ch_sub[base + nb] = si
                    self.ch_old[base + nb] = pm
                    self.ch_completed[base + nb] = 1
                else:
                    self.ch_sub[base + nb] = si
                    self.ch_old[base + nb] = pm
                    self.ch_completed[base + nb] = 0
                nb += 1
            for i in range(nb):
                si = self.ch_sub[base + i]
                if self.ch_completed[base + i]:
                    self.sub_count[si] += 1
                    self.sub_partial[si] = 0
                else:
                    self.sub_partial[si] = self.ch_old[base + i] | bit
            self.ch_start[d + 1] = base + nb
        else:  # _PATTERN
            top0 = self.pstates_top
            i = 0
            while i < top0:
                code = self.pstates[i]
                i += 1
                k = <int> (code / self.ppow)
                mcode = code % self.ppow
                a = self.pattern[k]
                npw = 1
                for b in range(a - 1):
                    npw *= n + 1
                tgt = (mcode / npw) % (n + 1)
                if tgt == <unsigned long long> c:
                    if k + 1 == self.plen:
                        self.pstates_top = top0
                        return 0
                    ncode = (<unsigned long long> (k + 1)) * self.ppow + mcode
                elif tgt == 0:
                    # reject if c already appears among the mapped digits
                    snap = 0
                    digit = mcode
                    for b in range(self.ru):
                        if digit % (n + 1) == <unsigned long long> c:
                            snap = 1
                            break
                        digit //= n + 1
                    if snap:
                        continue
                    if k + 1 == self.plen:
                        self.pstates_top = top0
                        return 0
                    ncode = (<unsigned long long> (k + 1)) * self.ppow + mcode + (<unsigned long long> c) * npw
                else:
                    continue
                if not self._pstate_known(ncode):
                    self._pstate_add(ncode)
            self.pstate_count[d] = top0
        self.undo_c[d] = c
        self.undo_lp[d] = lp
        self.undo_umax[d] = self.used_max
        self.last_pos[c] = pos
        if c > self.used_max:
            self.used_max = c
        self.tokens[d] = c
        self.length += 1
        return 1

    cdef void pop(self) noexcept:
        cdef int d = self.length - 1
        cdef int c = self.undo_c[d]
        cdef int i, idx, si
        self.length = d
        self.last_pos[c] = self.undo_lp[d]
        self.used_max = self.undo_umax[d]
        if self.mode == _DS:
            self.block_mask = self.undo_bmask[d]
            self.blocks_used = self.undo_bused[d]
            for i in range(self.bump_start[d], self.bump_start[d + 1]):
                idx = self.bump_idx[i]
                self.alt[idx] -= 1
                self.alt_last[idx] = self.bump_old[i]
        elif self.mode == _FORMATION:
            for i in range(self.ch_start[d], self.ch_start[d + 1]):
                si = self.ch_sub[i]
                if self.ch_completed[i]:
                    self.sub_count[si] -= 1
                self.sub_partial[si] = self.ch_old[i]
        else:
            self.pstates_top = self.pstate_count[d]

    cdef int rec(self) except -1:
        cdef int c, cmax, ln
        if self.length >= self.ceiling:
            return 0
        cmax = self.used_max + 1
        if cmax > self.n:
            cmax = self.n
        for c in range(1, cmax + 1):
            if self.node_budget and self.nodes >= self.node_budget:
                self.truncated = True
                return 0
            if self.try_push(c):
                self.nodes += 1
                ln = self.length
                if ln > self.best:
                    self.best = ln
                    self.best_len = ln
                    memcpy(self.best_tokens, self.tokens, ln * sizeof(int))
                    if ln >= self.ceiling:
                        self.done = True
                if not self.done:
                    self.rec()
                self.pop()
                if self.done or self.truncated:
                    return 0
        return 0


def seq_search(int mode, int n, int j, int ceiling, int s=0, int r=0,
               tuple pattern=(), int max_blocks=0, long long node_budget=0,
               tuple prefix=(), int initial_best=-1):
    """Depth-first maximum-length search over canonical admissible sequences.

    Mirrors `_kernels_py.seq_search`; returns (best, witness_tokens, nodes,
    truncated)."""
    cdef _SeqKernel k = _SeqKernel(mode, n, j, ceiling, s, r, pattern,
                                   max_blocks, node_budget)
    cdef int tok, i
    if len(prefix) > ceiling or any(not 1 <= t <= n for t in prefix):
        raise ValueError("forced prefix must fit the ceiling and letter range")
    for tok in prefix:
        if not k.try_push(tok):
            raise ValueError(f"forced prefix {prefix!r} is not admissible")
    k.best = max(initial_best, len(prefix))
    k.best_len = len(prefix)
    memcpy(k.best_tokens, k.tokens, k.best_len * sizeof(int))
    k.done = k.best >= ceiling
    if not k.done:
        k.rec()
    witness = [k.best_tokens[i] for i in range(k.best_len)]
    return k.best, witness, k.nodes, bool(k.truncated)


cdef bint _cols_embed(unsigned long long* rows, int* sel,
                      unsigned long long* p_rows, int pn, int pm, int m) noexcept:
    cdef int j = 0, v, u
    cdef bint ok
    for v in range(pm):
        while j < m:
            ok = True
            for u in range(pn):
                if (p_rows[u] >> v) & 1 and not ((rows[sel[u]] >> j) & 1):
                    ok = False
                    break
            if ok:
                break
            j += 1
        if j == m:
            return False
        j += 1
    return True


cdef bint _choose_rows(unsigned long long* rows, int n, int m,
                       unsigned long long* p_rows, int pn, int pm,
                       int* sel, int u, int start) noexcept:
    cdef int i
    if u == pn:
        return _cols_embed(rows, sel, p_rows, pn, pm, m)
    for i in range(start, n - (pn - u) + 1):
        sel[u] = i
        if _choose_rows(rows, n, m, p_rows, pn, pm, sel, u + 1, i + 1):
            return True
    return False


cdef class _MatrixKernel:
    cdef int n, m, pn, pm, total, best
    cdef long long node_budget, nodes
    cdef bint truncated, done
    cdef unsigned long long* rows
    cdef unsigned long long* best_rows
    cdef unsigned long long* p_rows
    cdef int* sel

    def __cinit__(self, int n, int m, tuple p_rows, int pn, int pm,
                  long long node_budget):
        cdef int i
        if n < 1 or m < 1 or m > 62:
            raise ValueError("need 1 <= n and 1 <= m <= 62")
        if n * m > 50_000:
            raise ValueError("cell count exceeds the 50000 search limit")
        self.n = n
        self.m = m
        self.pn = pn
        self.pm = pm
        self.total = n * m
        self.node_budget = node_budget
        self.nodes = 0
        self.truncated = False
        self.done = False
        self.rows = <unsigned long long*> _alloc(n * sizeof(unsigned long long))
        self.best_rows = <unsigned long long*> _alloc(n * sizeof(unsigned long long))
        self.p_rows = <unsigned long long*> _alloc(max(pn, 1) * sizeof(unsigned long long))
        self.sel = <int*> _alloc(max(pn, 1) * sizeof(int))
        memset(self.rows, 0, n * sizeof(unsigned long long))
        memset(self.best_rows, 0, n * sizeof(unsigned long long))
        for i in range(pn):
            self.p_rows[i] = p_rows[i]

    def __dealloc__(self):
        PyMem_Free(self.rows)
        PyMem_Free(self.best_rows)
        PyMem_Free(self.p_rows)
        PyMem_Free(self.sel)

    cdef bint contains(self) noexcept:
        if self.pn > self.n or self.pm > self.m:
            return False
        return _choose_rows(self.rows, self.n, self.m, self.p_rows,
                            self.pn, self.pm, self.sel, 0, 0)

    cdef int rec(self, int idx, int ones) except -1:
        cdef int i, jc
        cdef unsigned long long bit
        if idx == self.total:
            return 0
        if ones + (self.total - idx) <= self.best:
            return 0
        if self.node_budget and self.nodes >= self.node_budget:
            self.truncated = True
            return 0
        i = idx // self.m
        jc = idx % self.m
        bit = (<unsigned long long> 1) << jc
        self.rows[i] |= bit
        if not self.contains():
            self.nodes += 1
            if ones + 1 > self.best:
                self.best = ones + 1
                memcpy(self.best_rows, self.rows, self.n * sizeof(unsigned long long))
                if self.best >= self.total:
                    self.done = True
            if not self.done:
                self.rec(idx + 1, ones + 1)
        self.rows[i] ^= bit
        if self.done or self.truncated:
            return 0
        self.nodes += 1
        self.rec(idx + 1, ones)
        return 0


def matrix_search(int n, int m, tuple p_rows, int pn, int pm,
                  long long node_budget=0, tuple prefix_bits=(),
                  int initial_best=-1):
    """Row-major fill with 1-before-0 branching; mirrors `_kernels_py.matrix_search`."""
    cdef _MatrixKernel k = _MatrixKernel(n, m, p_rows, pn, pm, node_budget)
    cdef int idx = 0, i, jc, ones0 = 0, bit
    if len(prefix_bits) > n * m or any(b not in (0, 1) for b in prefix_bits):
        raise ValueError("forced prefix must be 0/1 bits within the cell count")
    for bit in prefix_bits:
        if bit:
            i = idx // m
            jc = idx % m
            k.rows[i] |= (<unsigned long long> 1) << jc
            ones0 += 1
            if k.contains():
                raise ValueError("forced prefix already contains the pattern")
        idx += 1
    k.best = max(initial_best, ones0)
    memcpy(k.best_rows, k.rows, n * sizeof(unsigned long long))
    k.done = k.best >= k.total
    if not k.done:
        k.rec(len(prefix_bits), ones0)
    witness = [k.best_rows[i] for i in range(n)]
    return k.best, witness, k.nodes, bool(k.truncated)
