"""Flat basket codes: cyclic words recording band feet along the binding.

A basket surface is a disk together with n bands, band i lying in its own
page of the trivial open book, meeting the binding circle in two arcs
(its feet).  Reading band labels in the order their feet occur around the
binding yields a cyclic word over {1..n} in which every label appears
exactly twice -- the *flat basket code*.  The label order is the page
order and is never permuted; rotating the word is the only built-in
equivalence (choice of starting point on the binding).

Everything in this module is pure word combinatorics:

* boundary component count, via the standard ribbon-graph boundary walk;
* interleaving pairs (the band pairs that cross in projection);
* cyclic descents (positions where a "shortcut" on the associated
  Legendrian front is available);
* the closed-form Legendrian invariants (-2n, -n+1, -n-1);
* a streaming enumerator of rotation-canonical codes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


DEFAULT_ENUMERATION_CAP = 8


class CodeError(ValueError):
    """Raised for text or word sequences that are not valid basket codes."""


@dataclass(frozen=True)
class LegendrianData:
    """Classical invariants of the Legendrian/transverse representatives
    built from an n-band basket: tb = -2n, rot = -n+1, sl = -n-1."""

    tb: int
    rot: int
    sl: int


@dataclass(frozen=True)
class FlatBasketCode:
    """A validated flat basket code.

    ``word`` is the cyclic word (stored linearly, any rotation); ``n`` is
    the band count, i.e. the first Betti number of the surface.
    """

    word: tuple[int, ...]
    n: int

    # -- construction ---------------------------------------------------

    @classmethod
    def from_word(cls, word: Iterable[int]) -> "FlatBasketCode":
        w = tuple(int(x) for x in word)
        if not w:
            raise CodeError("empty code")
        n = max(w)
        if len(w) != 2 * n:
            counts: dict[int, int] = {}
            for label in w:
                counts[label] = counts.get(label, 0) + 1
            for label, cnt in sorted(counts.items()):
                if cnt != 2:
                    raise CodeError(f"label {label} occurs {cnt} times (expected 2)")
            raise CodeError(f"word length {len(w)} does not match 2*{n}")
        counts = {}
        for label in w:
            if label < 1:
                raise CodeError(f"label {label} is not a positive integer")
            counts[label] = counts.get(label, 0) + 1
        for label in range(1, n + 1):
            cnt = counts.get(label, 0)
            if cnt != 2:
                raise CodeError(f"label {label} occurs {cnt} times (expected 2)")
        return cls(word=w, n=n)

    @classmethod
    def parse(cls, text: str) -> "FlatBasketCode":
        """Parse comma- or whitespace-separated labels, e.g. ``1,2,3,4,1,2,3,4``."""
        tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
        if not tokens:
            raise CodeError("empty code")
        try:
            word = [int(t) for t in tokens]
        except ValueError as exc:
            raise CodeError(f"non-integer token in code: {exc}") from None
        return cls.from_word(word)

    def to_json(self) -> dict:
        return {"n": self.n, "word": list(self.word)}

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.word)

    # -- rotation equivalence --------------------------------------------

    def canonical(self) -> "FlatBasketCode":
        """Lexicographically minimal rotation of the word."""
        w = self.word
        best = min(w[i:] + w[:i] for i in range(len(w)))
        return FlatBasketCode(word=best, n=self.n)

    def is_canonical(self) -> bool:
        return self.word == self.canonical().word

    def mirror(self) -> "FlatBasketCode":
        """Reverse the word and complement labels (i -> n+1-i), canonicalized.

        Reversal flips the reading direction of the binding and the
        complement flips the page order; together they present the mirror
        surface, so the boundary of the result is the mirror link.
        """
        w = tuple(self.n + 1 - x for x in reversed(self.word))
        return FlatBasketCode(word=w, n=self.n).canonical()

    # -- combinatorial invariants -----------------------------------------

    def occurrences(self) -> dict[int, tuple[int, int]]:
        occ: dict[int, list[int]] = {}
        for pos, label in enumerate(self.word):
            occ.setdefault(label, []).append(pos)
        return {label: (p[0], p[1]) for label, p in occ.items()}

    def other_foot(self) -> list[int]:
        """For each position, the position of the same label's other foot."""
        other = [0] * len(self.word)
        for p, q in self.occurrences().values():
            other[p] = q
            other[q] = p
        return other

    def interleaving_pairs(self) -> set[tuple[int, int]]:
        """Unordered label pairs whose occurrences alternate cyclically.

        These are exactly the band pairs whose strips cross in the
        standard projection (and whose core loops meet on the surface).
        """
        occ = self.occurrences()
        pairs = set()
        for i in range(1, self.n + 1):
            p1, p2 = occ[i]
            for j in range(i + 1, self.n + 1):
                q1, q2 = occ[j]
                inside = (p1 < q1 < p2) + (p1 < q2 < p2)
                if inside == 1:
                    pairs.add((i, j))
        return pairs

    def count_components(self) -> int:
        """Number of boundary components of the basket surface.

        Boundary walk of the one-vertex ribbon graph: circle arc k runs
        from the exit of foot k to the entry of foot k+1, then the band
        side carries the walk to the other foot of that band.  The induced
        permutation on circle arcs is k -> other(k+1); its cycles are the
        boundary components.
        """
        two_n = len(self.word)
        other = self.other_foot()
        seen = [False] * two_n
        comps = 0
        for start in range(two_n):
            if seen[start]:
                continue
            comps += 1
            k = start
            while not seen[k]:
                seen[k] = True
                k = other[(k + 1) % two_n]
        return comps

    def count_shortcuts(self) -> int:
        """Number of cyclic descents (positions with word[k] > word[k+1]).

        Each descent is a place where the associated Legendrian link
        admits a tb-raising shortcut.
        """
        w = self.word
        return sum(1 for k in range(len(w)) if w[k] > w[(k + 1) % len(w)])

    def has_adjacent_equal(self) -> bool:
        w = self.word
        return any(w[k] == w[(k + 1) % len(w)] for k in range(len(w)))

    def legendrian_invariants(self) -> LegendrianData:
        """Closed formulas for (tb, rot, sl) of the associated Legendrian
        link and its transverse pushoff; requires at least one band."""
        if self.n < 1:
            raise CodeError("Legendrian invariants need at least one band")
        return LegendrianData(tb=-2 * self.n, rot=-self.n + 1, sl=-self.n - 1)

    def genus(self) -> int:
        return (self.n - self.count_components() + 1) // 2


def parse_code(text: str) -> FlatBasketCode:
    return FlatBasketCode.parse(text)


def torus2_code(m: int) -> FlatBasketCode:
    """The staircase code (1..m, 1..m); its boundary is the negative
    alternating torus link on two strands with m-1 crossings."""
    if m < 2:
        raise CodeError(f"staircase code needs m >= 2, got {m}")
    return FlatBasketCode.from_word(tuple(range(1, m + 1)) * 2)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _canonical_words(n: int) -> Iterator[tuple[int, ...]]:
    """Yield, in lexicographic order, every word over {1..n} (each label
    twice) that is the minimal rotation of its class.

    DFS over positions with incremental rotation pruning: for each later
    occurrence of the minimal label we track whether the rotation starting
    there is still tied with the word built so far; a strictly smaller
    rotation prunes the branch.
    """
    two_n = 2 * n
    remaining = [2] * (n + 1)  # index by label, slot 0 unused
    word = [0] * two_n
    word[0] = 1
    remaining[1] -= 1

    def finish_check(cands: list[int]) -> bool:
        # Candidates tied through the linear part; finish the wrapped
        # comparison word[i:]+word[:i] vs word.
        for i in cands:
            for k in range(two_n - i, two_n):
                a = word[(i + k) % two_n]
                b = word[k]
                if a < b:
                    return False
                if a > b:
                    break
        return True

    def rec(pos: int, cands: list[int]) -> Iterator[tuple[int, ...]]:
        if pos == two_n:
            if finish_check(cands):
                yield tuple(word)
            return
        for label in range(1, n + 1):
            if remaining[label] == 0:
                continue
            # Update rotation candidates incrementally.
            new_cands = []
            pruned = False
            for i in cands:
                ref = word[pos - i]
                if label < ref:
                    pruned = True
                    break
                if label == ref:
                    new_cands.append(i)
            if pruned:
                continue
            if label == 1 and pos > 0:
                new_cands.append(pos)
            word[pos] = label
            remaining[label] -= 1
            yield from rec(pos + 1, new_cands)
            remaining[label] += 1
        word[pos] = 0

    yield from rec(1, [])


def enumerate_codes(
    n: int,
    *,
    quotient_mirror: bool = False,
    forbid_adjacent_equal: bool = False,
    components: Optional[int] = None,
    shard: Optional[tuple[int, int]] = None,
    max_n: int = DEFAULT_ENUMERATION_CAP,
) -> Iterator[FlatBasketCode]:
    """Stream every rotation class of n-band codes exactly once.

    Codes are emitted in lexicographic order of canonical forms.  Filters:
    ``quotient_mirror`` keeps one representative per mirror pair,
    ``forbid_adjacent_equal`` drops codes with cyclically adjacent equal
    labels, ``components`` keeps only codes with that boundary count.
    ``shard=(k, m)`` deterministically keeps the k-th of m slices.
    """
    if n < 1 or n > max_n:
        raise CodeError(f"band count {n} outside enumeration range 1..{max_n}")
    if shard is not None:
        k, m = shard
        if not (0 <= k < m):
            raise CodeError(f"bad shard spec {k}/{m}")
    for word in _canonical_words(n):
        if shard is not None:
            k, m = shard
            if _shard_key(word) % m != k:
                continue
        code = FlatBasketCode(word=word, n=n)
        if forbid_adjacent_equal and code.has_adjacent_equal():
            continue
        if quotient_mirror:
            mirrored = code.mirror()
            if mirrored.word < word:
                continue
        if components is not None and code.count_components() != components:
            continue
        yield code


def _shard_key(word: tuple[int, ...]) -> int:
    key = 0
    for i, label in enumerate(word):
        key = (key * 31 + label * (i + 1)) % 1_000_003
    return key


def count_rotation_classes_bruteforce(n: int) -> int:
    """Independent oracle: list all words, group by rotation, count classes.

    Exponential; intended for n <= 4 cross-checks of the enumerator.
    """
    from itertools import permutations

    letters = []
    for label in range(1, n + 1):
        letters += [label, label]
    classes = set()
    for perm in set(permutations(letters)):
        best = min(perm[i:] + perm[:i] for i in range(len(perm)))
        classes.add(best)
    return len(classes)
