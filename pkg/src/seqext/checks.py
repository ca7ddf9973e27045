"""Predicates on sequences: sparsity, alternations, formations, pattern containment.

Every predicate here favors an obviously-correct implementation; the fast
incremental twins used inside the oracle search kernels are validated
against these (and `formation_length` against `brute_formation_length`).
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter, defaultdict
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .errors import CapExceededError
from .sequences import Sequence, normalize

__all__ = [
    "is_sparse",
    "alternation_length",
    "max_alternation",
    "is_ds",
    "formation_length",
    "brute_formation_length",
    "max_formation_length",
    "avoids_all_formations",
    "contains_pattern",
]


def is_sparse(seq: Sequence, j: int) -> bool:
    """True iff every two equal letters sit at distance >= j (windows of j tokens are rainbow)."""
    if j < 1:
        raise ValueError("sparsity parameter must be >= 1")
    last: dict[int, int] = {}
    for i, tok in enumerate(seq.tokens):
        prev = last.get(tok)
        if prev is not None and i - prev < j:
            return False
        last[tok] = i
    return True


def alternation_length(seq: Sequence, a: int, b: int) -> int:
    """Length of the longest strict alternation a b a b ... (either letter first).

    Equals the number of runs in the restriction of seq to {a, b}; 0 if
    neither letter occurs.
    """
    if a == b:
        raise ValueError("alternation requires two distinct letters")
    runs = 0
    last = 0
    for tok in seq.tokens:
        if tok == a or tok == b:
            if tok != last:
                runs += 1
                last = tok
    return runs


def max_alternation(seq: Sequence) -> int:
    """Max of alternation_length over all pairs of distinct letters occurring in seq."""
    letters = sorted(seq.alphabet)
    if len(letters) < 2:
        return 0
    runs: dict[tuple[int, int], int] = defaultdict(int)
    last: dict[tuple[int, int], int] = {}
    best = 0
    for tok in seq.tokens:
        for b in letters:
            if b == tok:
                continue
            pair = (tok, b) if tok < b else (b, tok)
            if last.get(pair) != tok:
                runs[pair] += 1
                last[pair] = tok
                if runs[pair] > best:
                    best = runs[pair]
    return best


def is_ds(seq: Sequence, s: int) -> bool:
    """Davenport-Schinzel of order s: no adjacent equal letters, no alternation of length s+2."""
    if s < 1:
        raise ValueError("order must be >= 1")
    toks = seq.tokens
    if any(toks[i] == toks[i + 1] for i in range(len(toks) - 1)):
        return False
    return max_alternation(seq) <= s + 1


def _letter_set(letters: Iterable[int]) -> frozenset[int]:
    out = tuple(letters)
    lset = frozenset(out)
    if not lset:
        raise ValueError("formation query needs at least one letter")
    if len(lset) != len(out):
        raise ValueError("formation query letters must be pairwise distinct")
    return lset


def formation_length(seq: Sequence, letters: Iterable[int]) -> int:
    """Largest s such that seq contains s concatenated permutations of exactly these letters.

    Greedy left-to-right scan: collect distinct query letters, count a
    permutation and reset whenever all r have been seen. Letters absent from
    seq simply prevent permutations from completing (result 0).
    """
    lset = _letter_set(letters)
    need = len(lset)
    seen: set[int] = set()
    count = 0
    for tok in seq.tokens:
        if tok in lset and tok not in seen:
            seen.add(tok)
            if len(seen) == need:
                count += 1
                seen.clear()
    return count


def brute_formation_length(seq: Sequence, letters: Iterable[int], cap: int = 24) -> int:
    """Exact maximum formation length by exhaustive subsequence search.

    Considers every way of assembling consecutive permutations from the
    restriction (memoized on scan position and partially collected letters);
    independent of the greedy scan it validates. Restrictions longer than
    `cap` are refused.
    """
    lset = _letter_set(letters)
    restriction = [tok for tok in seq.tokens if tok in lset]
    if len(restriction) > cap:
        raise CapExceededError(
            f"restriction length {len(restriction)} exceeds cap {cap}"
        )
    need = len(lset)
    memo: dict[tuple[int, frozenset[int]], int] = {}

    def best_from(i: int, have: frozenset[int]) -> int:
        if i == len(restriction):
            return 0
        key = (i, have)
        hit = memo.get(key)
        if hit is not None:
            return hit
        tok = restriction[i]
        best = best_from(i + 1, have)  # skip this token
        if tok not in have:
            grown = have | {tok}
            if len(grown) == need:
                cand = 1 + best_from(i + 1, frozenset())
            else:
                cand = best_from(i + 1, grown)
            if cand > best:
                best = cand
        memo[key] = best
        return best

    return best_from(0, frozenset())


def max_formation_length(
    seq: Sequence,
    r: int,
    subset_cap: int = 10**6,
    record: Optional[list] = None,
) -> int:
    """Max of formation_length over all r-subsets of the alphabet (0 if alphabet < r).

    Subsets whose least-frequent letter occurs no more often than the best
    value found so far cannot improve it (each permutation uses every letter
    once), so they are skipped without scanning. `record` collects the
    (letters, value) pairs actually scanned.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    occ = Counter(seq.tokens)
    letters = sorted(occ, key=lambda tok: (-occ[tok], tok))
    if len(letters) < r:
        return 0
    if comb(len(letters), r) > subset_cap:
        raise CapExceededError(
            f"C({len(letters)},{r}) subsets exceed cap {subset_cap}"
        )
    best = 0
    for combo in combinations(letters, r):
        if occ[combo[-1]] <= best:  # letters ordered by occurrence count
            continue
        val = formation_length(seq, combo)
        if record is not None:
            record.append((combo, val))
        if val > best:
            best = val
    return best


def avoids_all_formations(seq: Sequence, r: int, s: int) -> bool:
    """True iff seq contains no concatenation of s permutations of any r distinct letters."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return max_formation_length(seq, r) < s


def contains_pattern(seq: Sequence, u: Sequence) -> bool:
    """True iff some injective relabeling of u's letters embeds u as a subsequence of seq.

    Backtracks over partial letter assignments with a left-to-right scan;
    candidate letters are tried in increasing id order, and each chosen
    occurrence is the earliest available one.
    """
    utoks = normalize(u).tokens
    if not utoks:
        raise ValueError("pattern must be nonempty")
    positions: dict[int, list[int]] = defaultdict(list)
    for i, tok in enumerate(seq.tokens):
        positions[tok].append(i)
    letters = sorted(positions)
    if len(set(utoks)) > len(letters):
        return False

    def first_at_or_after(letter: int, i: int) -> Optional[int]:
        lst = positions[letter]
        k = bisect_left(lst, i)
        return lst[k] if k < len(lst) else None

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def match(k: int, i: int) -> bool:
        if k == len(utoks):
            return True
        a = utoks[k]
        if a in mapping:
            p = first_at_or_after(mapping[a], i)
            return p is not None and match(k + 1, p + 1)
        for cand in letters:
            if cand in used:
                continue
            p = first_at_or_after(cand, i)
            if p is None:
                continue
            mapping[a] = cand
            used.add(cand)
            if match(k + 1, p + 1):
                return True
            del mapping[a]
            used.discard(cand)
        return False

    return match(0, 0)
