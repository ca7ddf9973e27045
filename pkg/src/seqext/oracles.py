"""Exact brute-force computation of the extremal functions on small instances.

Every oracle runs a complete branch-and-bound search under a proven search
ceiling, re-checks its own witness through the independent predicates in
`checks`/`matrices`, and reports the node count plus an `exhausted` flag
(true iff the search space was fully explored, making the value exact).

Search ceilings: DS sequences never exceed s C(n,2) + 1; a j-sparse
sequence avoiding all (r, s)-formations never exceeds s n^r when j >= r
(any j-sparse sequence on fewer than j letters has length at most that
letter count); avoiding a pattern u with r_u letters and length s_u implies
avoiding all (r_u, s_u)-formations, since each of the s_u permutation
groups supplies one token of u. When j < r no such ceiling exists (a cycle
of j letters is admissible and arbitrarily long), so the search runs to a
configurable length cap and reports exhausted=False if the cap was hit.

Default size caps keep casual calls off exponential cliffs; pass
override_caps=True to lift them.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Union

from . import backends, _kernels_py, checks, matrices
from .errors import CapExceededError
from .matrices import MatrixPattern, ZeroOneMatrix
from .sequences import BlockedSequence, PatternSequence, Sequence, flatten

__all__ = [
    "ExtremalResult",
    "oracle_lambda",
    "oracle_formation",
    "oracle_pattern",
    "oracle_lambda_blocks",
    "oracle_lambda_prime",
    "oracle_ex_matrix",
    "lambda_ceiling",
    "formation_ceiling",
    "estimate_nodes",
]

LAMBDA_CAPS = {"n": 5, "s": 4, "j": 3}
FORMATION_CAPS = {"n": 4, "r": 3, "s": 3, "j": 3}
PATTERN_CAPS = {"n": 4, "pattern length": 6, "j": 3}
LAMBDA_BLOCKS_CAPS = {"n": 4, "s": 4, "m": 4}
LAMBDA_PRIME_CAPS = {"n": 4, "s": 3, "m": 4}
EX_MATRIX_CELL_CAP = 30

_SEQ_SPLIT_DEPTH = 4
_MATRIX_SPLIT_DEPTH = 6


@dataclass(frozen=True)
class ExtremalResult:
    """Outcome of an extremal search: the value, a witness achieving it, the
    number of explored nodes, and whether the search space was exhausted."""

    value: int
    witness: Union[Sequence, BlockedSequence, ZeroOneMatrix]
    nodes_explored: int
    exhausted: bool


def lambda_ceiling(n: int, s: int) -> int:
    """Every order-s DS sequence on n letters has length at most s C(n,2) + 1."""
    return s * comb(n, 2) + 1


def formation_ceiling(n: int, r: int, s: int) -> int:
    """Every r-sparse sequence on n >= r letters avoiding all (r, s)-formations
    has length at most s n^r."""
    return s * n**r


def _check_caps(caps: dict[str, int], values: dict[str, int], override: bool) -> None:
    if override:
        return
    for name, cap in caps.items():
        if values[name] > cap:
            raise CapExceededError(
                f"{name}={values[name]} exceeds default cap {cap}; "
                "pass override_caps=True to force the search"
            )


def estimate_nodes(kind: str, **params) -> float:
    """Crude upper estimate of search-tree size, for cap-override warnings."""
    if kind == "matrix":
        return 2.0 ** min(params["n"] * params["m"] + 1, 1000)
    n, ceiling = params["n"], params["ceiling"]
    total = 0.0
    width = 1.0
    for _ in range(ceiling):
        width *= n
        total += width
        if total > 1e300:
            break
    return total


def _run_seq(task: dict):
    return backends.seq_search(**task)


def _run_matrix(task: dict):
    return backends.matrix_search(**task)


def _seq_frontier(kw: dict, depth: int):
    """Enumerate admissible canonical prefixes of the given depth (pure state
    machinery), tracking the best shallow value on the way."""
    st = _kernels_py.SeqState(
        kw["mode"], kw["n"], kw["j"], s=kw["s"], r=kw["r"],
        pattern=kw["pattern"], max_blocks=kw["max_blocks"],
    )
    prefixes: list[tuple[int, ...]] = []
    nodes = 0
    best = 0
    witness: list[int] = []

    def walk():
        nonlocal nodes, best, witness
        cmax = min(st.used_max + 1, kw["n"])
        for c in range(1, cmax + 1):
            if st.try_push(c):
                nodes += 1
                if len(st.tokens) > best:
                    best = len(st.tokens)
                    witness = list(st.tokens)
                if len(st.tokens) < depth:
                    walk()
                else:
                    prefixes.append(tuple(st.tokens))
                st.pop()

    walk()
    return prefixes, best, witness, nodes


def _parallel_seq_search(kw: dict, ceiling: int, threads: int, node_budget: int):
    depth = min(_SEQ_SPLIT_DEPTH, ceiling)
    if depth < 1:
        return backends.seq_search(ceiling=ceiling, node_budget=node_budget, **kw)
    prefixes, best, witness, nodes = _seq_frontier(kw, depth)
    tasks = [
        dict(
            kw,
            ceiling=ceiling,
            node_budget=node_budget,
            prefix=p,
            initial_best=best,
        )
        for p in prefixes
    ]
    truncated = False
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for b, w, nd, tr in pool.map(_run_seq, tasks):
            nodes += nd
            truncated = truncated or tr
            if b > best:
                best = b
                witness = w
    return best, witness, nodes, truncated


def _seq_oracle(kw: dict, ceiling: int, threads: int, node_budget: int):
    if threads > 1:
        return _parallel_seq_search(kw, ceiling, threads, node_budget)
    return backends.seq_search(ceiling=ceiling, node_budget=node_budget, **kw)


def oracle_lambda(
    n: int,
    s: int,
    j: int = 2,
    *,
    override_caps: bool = False,
    threads: int = 1,
    node_budget: int = 0,
) -> ExtremalResult:
    """Maximum length of a j-sparse order-s DS sequence on at most n letters."""
    if n < 1 or s < 1 or j < 1:
        raise ValueError("need n, s, j >= 1")
    _check_caps(LAMBDA_CAPS, {"n": n, "s": s, "j": j}, override_caps)
    ceiling = lambda_ceiling(n, s)
    kw = dict(mode=backends.MODE_DS, n=n, j=j, s=s, r=0, pattern=(), max_blocks=0)
    best, toks, nodes, truncated = _seq_oracle(kw, ceiling, threads, node_budget)
    witness = Sequence(tuple(toks))
    if not (len(witness) == best and checks.is_ds(witness, s) and checks.is_sparse(witness, j)):
        raise RuntimeError("internal error: witness failed independent re-check")
    return ExtremalResult(best, witness, nodes, not truncated)


def oracle_formation(
    n: int,
    r: int,
    s: int,
    j: int,
    *,
    length_cap: int = 24,
    override_caps: bool = False,
    threads: int = 1,
    node_budget: int = 0,
) -> ExtremalResult:
    """Maximum length of a j-sparse sequence on at most n letters avoiding all
    (r, s)-formations. For j < r no ceiling exists; the search then stops at
    `length_cap` and reports exhausted=False if the cap was reached."""
    if n < 1 or r < 1 or s < 1 or j < 1:
        raise ValueError("need n, r, s, j >= 1")
    _check_caps(FORMATION_CAPS, {"n": n, "r": r, "s": s, "j": j}, override_caps)
    if n < j:
        ceiling, proven = n, True
    elif j >= r:
        ceiling, proven = formation_ceiling(n, r, s), True
    else:
        ceiling, proven = length_cap, False
    kw = dict(mode=backends.MODE_FORMATION, n=n, j=j, s=s, r=r, pattern=(), max_blocks=0)
    best, toks, nodes, truncated = _seq_oracle(kw, ceiling, threads, node_budget)
    witness = Sequence(tuple(toks))
    if not (
        len(witness) == best
        and checks.is_sparse(witness, j)
        and checks.max_formation_length(witness, r) < s
    ):
        raise RuntimeError("internal error: witness failed independent re-check")
    exhausted = not truncated and (proven or best < ceiling)
    return ExtremalResult(best, witness, nodes, exhausted)


def oracle_pattern(
    u: Union[Sequence, PatternSequence],
    j: int,
    n: int,
    *,
    length_cap: int = 24,
    override_caps: bool = False,
    threads: int = 1,
    node_budget: int = 0,
) -> ExtremalResult:
    """Maximum length of a j-sparse sequence on at most n letters avoiding u.

    A sequence avoiding u avoids every (r_u, s_u)-formation (r_u = distinct
    letters of u, s_u = length of u), which yields the search ceiling for
    j >= r_u; below that sparsity the function is infinite and the search is
    capped as in oracle_formation."""
    if n < 1 or j < 1:
        raise ValueError("need n, j >= 1")
    u = PatternSequence.from_sequence(u)
    if len(u) == 0:
        raise ValueError("pattern must be nonempty")
    ru = len(u.alphabet)
    su = len(u)
    _check_caps(PATTERN_CAPS, {"n": n, "pattern length": su, "j": j}, override_caps)
    if n < j:
        ceiling, proven = n, True
    elif j >= ru:
        ceiling, proven = formation_ceiling(n, ru, su), True
    else:
        ceiling, proven = length_cap, False
    kw = dict(mode=backends.MODE_PATTERN, n=n, j=j, s=0, r=0, pattern=u.tokens, max_blocks=0)
    best, toks, nodes, truncated = _seq_oracle(kw, ceiling, threads, node_budget)
    witness = Sequence(tuple(toks))
    if not (
        len(witness) == best
        and checks.is_sparse(witness, j)
        and not checks.contains_pattern(witness, u)
    ):
        raise RuntimeError("internal error: witness failed independent re-check")
    exhausted = not truncated and (proven or best < ceiling)
    return ExtremalResult(best, witness, nodes, exhausted)


def _greedy_blocks(tokens: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Minimal partition into blocks of distinct letters (greedy cut is optimal)."""
    blocks: list[tuple[int, ...]] = []
    cur: list[int] = []
    seen: set[int] = set()
    for tok in tokens:
        if tok in seen:
            blocks.append(tuple(cur))
            cur = []
            seen = set()
        cur.append(tok)
        seen.add(tok)
    if cur:
        blocks.append(tuple(cur))
    return tuple(blocks)


def oracle_lambda_blocks(
    n: int,
    s: int,
    m: int,
    *,
    override_caps: bool = False,
    threads: int = 1,
    node_budget: int = 0,
) -> ExtremalResult:
    """Maximum length of an order-s DS sequence on at most n letters that can
    be partitioned into at most m blocks.

    Searches flat DS sequences while tracking the greedy minimal block
    partition: a sequence fits m blocks iff its greedy partition does, so
    block arrangements never multiply the search tree."""
    if n < 1 or s < 1 or m < 1:
        raise ValueError("need n, s, m >= 1")
    _check_caps(LAMBDA_BLOCKS_CAPS, {"n": n, "s": s, "m": m}, override_caps)
    ceiling = min(n * m, lambda_ceiling(n, s))
    kw = dict(mode=backends.MODE_DS, n=n, j=1, s=s, r=0, pattern=(), max_blocks=m)
    best, toks, nodes, truncated = _seq_oracle(kw, ceiling, threads, node_budget)
    witness = BlockedSequence(_greedy_blocks(tuple(toks)))
    flat = flatten(witness)
    if not (
        len(flat) == best
        and witness.block_count <= m
        and checks.is_ds(flat, s)
    ):
        raise RuntimeError("internal error: witness failed independent re-check")
    return ExtremalResult(best, witness, nodes, not truncated)


def oracle_lambda_prime(
    n: int,
    s: int,
    m: int,
    *,
    override_caps: bool = False,
    node_budget: int = 0,
) -> ExtremalResult:
    """Maximum length of a sequence on at most n letters in at most m blocks
    with every letter pair together in at most s blocks. No adjacency or
    alternation constraint applies; block content alone matters, so blocks
    are searched as ascending letter sets (empty blocks canonically trail)."""
    if n < 1 or s < 1 or m < 1:
        raise ValueError("need n, s, m >= 1")
    _check_caps(LAMBDA_PRIME_CAPS, {"n": n, "s": s, "m": m}, override_caps)
    cooc = [[0] * (n + 1) for _ in range(n + 1)]
    blocks: list[list[int]] = []
    cur: list[int] = []
    best = 0
    witness: tuple[tuple[int, ...], ...] = ()
    nodes = 0
    truncated = False
    length = 0
    used_max = 0
    total = n * m

    def snapshot() -> tuple[tuple[int, ...], ...]:
        out = [tuple(b) for b in blocks]
        if cur:
            out.append(tuple(cur))
        return tuple(out)

    def rec():
        nonlocal best, witness, nodes, truncated, length, used_max
        if best >= total or truncated:
            return
        remaining = (n - len(cur)) + (m - len(blocks) - 1) * n
        if length + remaining <= best:
            return
        start = cur[-1] + 1 if cur else 1
        cmax = min(used_max + 1, n)
        for c in range(start, cmax + 1):
            if node_budget and nodes >= node_budget:
                truncated = True
                return
            if any(cooc[a][c] + 1 > s for a in cur):
                continue
            for a in cur:
                cooc[a][c] += 1
                cooc[c][a] += 1
            cur.append(c)
            prev_umax = used_max
            if c > used_max:
                used_max = c
            length += 1
            nodes += 1
            if length > best:
                best = length
                witness = snapshot()
            rec()
            length -= 1
            used_max = prev_umax
            cur.pop()
            for a in cur:
                cooc[a][c] -= 1
                cooc[c][a] -= 1
            if best >= total or truncated:
                return
        if cur and len(blocks) + 1 < m:
            blocks.append(list(cur))
            cur.clear()
            rec()
            restored = blocks.pop()
            cur.extend(restored)

    rec()
    bw = BlockedSequence(witness)
    if not (
        len(bw) == best
        and bw.block_count <= m
        and matrices.max_pair_cooccurrence(bw) <= s
    ):
        raise RuntimeError("internal error: witness failed independent re-check")
    return ExtremalResult(best, bw, nodes, not truncated)


def _matrix_frontier(n, m, p_rows, pn, pm, depth):
    """Enumerate admissible fillings of the first `depth` cells (1 before 0)."""
    rows = [0] * n
    prefixes: list[tuple[int, ...]] = []
    bits: list[int] = []
    nodes = 0
    best = 0
    witness = [0] * n

    def walk(idx, ones):
        nonlocal nodes, best, witness
        if idx == depth:
            prefixes.append(tuple(bits))
            return
        i, jc = divmod(idx, m)
        bit = 1 << jc
        rows[i] |= bit
        if not _kernels_py.masks_contain(rows, n, m, p_rows, pn, pm):
            nodes += 1
            bits.append(1)
            if ones + 1 > best:
                best = ones + 1
                witness = list(rows)
            walk(idx + 1, ones + 1)
            bits.pop()
        rows[i] ^= bit
        nodes += 1
        bits.append(0)
        walk(idx + 1, ones)
        bits.pop()

    walk(0, 0)
    return prefixes, best, witness, nodes


def oracle_ex_matrix(
    n: int,
    m: int,
    P: MatrixPattern,
    *,
    override_caps: bool = False,
    threads: int = 1,
    node_budget: int = 0,
) -> ExtremalResult:
    """Maximum number of ones in an n x m 0-1 matrix avoiding P."""
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    if not isinstance(P, ZeroOneMatrix):
        raise ValueError("P must be a matrix pattern")
    if all(mask == 0 for mask in P.rows):
        raise ValueError("pattern needs at least one 1-entry")
    if not override_caps and n * m > EX_MATRIX_CELL_CAP:
        raise CapExceededError(
            f"n*m={n * m} exceeds exhaustive cap {EX_MATRIX_CELL_CAP}; "
            "pass override_caps=True to force the search"
        )
    if threads > 1:
        depth = min(_MATRIX_SPLIT_DEPTH, n * m)
        prefixes, best, wit_rows, nodes = _matrix_frontier(
            n, m, P.rows, P.n, P.m, depth
        )
        tasks = [
            dict(
                n=n, m=m, p_rows=P.rows, pn=P.n, pm=P.m,
                node_budget=node_budget, prefix_bits=p, initial_best=best,
            )
            for p in prefixes
        ]
        truncated = False
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for b, w, nd, tr in pool.map(_run_matrix, tasks):
                nodes += nd
                truncated = truncated or tr
                if b > best:
                    best = b
                    wit_rows = w
    else:
        best, wit_rows, nodes, truncated = backends.matrix_search(
            n, m, P.rows, P.n, P.m, node_budget=node_budget
        )
    witness = ZeroOneMatrix(n, m, tuple(wit_rows))
    if not (witness.ones_count == best and not matrices.matrix_contains(witness, P)):
        raise RuntimeError("internal error: witness failed independent re-check")
    return ExtremalResult(best, witness, nodes, not truncated)
