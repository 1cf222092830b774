"""Integer-coefficient polynomials in the free *-algebra on T_1..T_d.

Words are tuples of :class:`Letter`; a :class:`FormalSum` maps words to
non-zero integer coefficients.  Two symbolic identities matter here: the
standard polynomial ``S_h`` and the double-permutation Laplace expansion
of the determinant of the commutator grid, whose normal forms agree
modulo ``[T_i, T_j] = [T_i*, T_j*] = 0``.
"""
from __future__ import annotations

import re
from collections import defaultdict
from itertools import permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ParseError, ValidationError


class Letter(tuple):
    """Generator ``T_index`` or its adjoint ``T_index*`` (index is 1-based)."""

    __slots__ = ()

    def __new__(cls, index: int, starred: bool = False):
        index = int(index)
        if index < 1:
            raise ValidationError(f"letter index must be >= 1, got {index}")
        return super().__new__(cls, (index, bool(starred)))

    @property
    def index(self) -> int:
        return self[0]

    @property
    def starred(self) -> bool:
        return self[1]

    def adjoint(self) -> "Letter":
        return Letter(self.index, not self.starred)

    def __repr__(self):
        return f"T{self.index}{'*' if self.starred else ''}"

    __str__ = __repr__


def T(i: int) -> Letter:
    return Letter(i, False)


def Ts(i: int) -> Letter:
    return Letter(i, True)


Word = tuple  # tuple[Letter, ...]; the empty word is the identity


def word_key(word: Word):
    """Canonical ordering: length first, then lexicographic on (index, starred)."""
    return (len(word), tuple(word))


def word_str(word: Word) -> str:
    return " ".join(map(str, word)) if word else "I"


def word_adjoint(word: Word) -> Word:
    return tuple(letter.adjoint() for letter in reversed(word))


def signed_permutations(n: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield (sign, perm) for every permutation of range(n).

    Sign is computed from the inversion count, which keeps this independent
    of the enumeration order of :func:`itertools.permutations`.
    """
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        yield (-1 if inversions % 2 else 1), perm


class FormalSum:
    """Immutable integer combination of words; zero coefficients never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, coeff in items:
            if not isinstance(coeff, int):
                raise TypeError(f"coefficients must be int, got {type(coeff).__name__}")
            acc[tuple(word)] += coeff
        self._terms = {w: c for w, c in acc.items() if c != 0}

    @classmethod
    def word(cls, *letters: Letter, coeff: int = 1) -> "FormalSum":
        return cls({tuple(letters): coeff})

    @classmethod
    def one(cls) -> "FormalSum":
        return cls({(): 1})

    # -- container protocol
    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Word, int]]:
        for w in sorted(self._terms, key=word_key):
            yield w, self._terms[w]

    def __contains__(self, word):
        return tuple(word) in self._terms

    def coefficient(self, word: Sequence[Letter]) -> int:
        return self._terms.get(tuple(word), 0)

    def words(self) -> list[Word]:
        return sorted(self._terms, key=word_key)

    def is_zero(self) -> bool:
        return not self._terms

    def max_index(self) -> int:
        return max((l.index for w in self._terms for l in w), default=0)

    # -- arithmetic
    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return FormalSum(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "FormalSum":
        return FormalSum({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FormalSum({w: other * c for w, c in self._terms.items()})
        if isinstance(other, FormalSum):
            return FormalSum(
                (w1 + w2, c1 * c2)
                for (w1, c1), (w2, c2) in product(self._terms.items(), other._terms.items())
            )
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def adjoint(self) -> "FormalSum":
        """Formal adjoint: reverse each word and toggle every star."""
        return FormalSum((word_adjoint(w), c) for w, c in self._terms.items())

    def normal_form(self) -> "FormalSum":
        return normal_form(self)

    # -- display / certificates
    def certificate_lines(self) -> list[str]:
        return [f"{c:+d} {word_str(w)}" for w, c in self]

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = word_str(w)
            parts.append(f"{sign} {body}" if mag == 1 else f"{sign} {mag} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[1:]

    def __repr__(self):
        return f"FormalSum({str(self)!r})"


def canonical_word(word: Word) -> Word:
    """Sort letters within each maximal run of equal starredness."""
    out: list[Letter] = []
    run: list[Letter] = []
    for letter in word:
        if run and letter.starred != run[-1].starred:
            out.extend(sorted(run))
            run = []
        run.append(letter)
    out.extend(sorted(run))
    return tuple(out)


def normal_form(s: FormalSum) -> FormalSum:
    """Normal form modulo commutation of same-starred letters.

    Mixed letters T_i, T_j* never commute, so each word is a sequence of
    alternating runs and sorting inside runs is a canonical form.
    """
    return FormalSum((canonical_word(w), c) for w, c in s)


def standard_polynomial(symbols: Sequence[Letter]) -> FormalSum:
    """S_h(x_1..x_h) = sum over permutations of sgn(p) x_p(1) ... x_p(h)."""
    symbols = list(symbols)
    if not symbols:
        raise ValidationError("standard polynomial needs h >= 1 symbols")
    return FormalSum(
        (tuple(symbols[p[i]] for i in range(len(symbols))), sign)
        for sign, p in signed_permutations(len(symbols))
    )


def interleaved_letters(d: int) -> list[Letter]:
    """(T_1*, T_1, T_2*, T_2, ..., T_d*, T_d)."""
    out = []
    for i in range(1, d + 1):
        out += [Ts(i), T(i)]
    return out


def gc_expansion(d: int) -> FormalSum:
    if d < 1:
        raise ValidationError("d must be >= 1")
    return standard_polynomial(interleaved_letters(d))


def commutator_entry(i: int, j: int) -> FormalSum:
    """B_ij = [T_j*, T_i] = T_j* T_i - T_i T_j* (1-based indices)."""
    return FormalSum({(Ts(j), T(i)): 1, (T(i), Ts(j)): -1})


def det_expansion_terms(d: int) -> Iterator[tuple[Word, int]]:
    """Raw (word, coefficient) terms of the Laplace double sum, uncancelled.

    sum_{sigma, tau} sgn(sigma) B_{tau(1), sigma(tau(1))} ... B_{tau(d), sigma(tau(d))}
    with each B_ij expanded into its two words: (d!)^2 * 2^d terms.
    """
    if d < 1:
        raise ValidationError("d must be >= 1")
    perms = list(signed_permutations(d))
    for sgn_sigma, sigma in perms:
        for _, tau in perms:
            factors = []
            for i in range(d):
                r = tau[i]
                c = sigma[r]
                factors.append((((Ts(c + 1), T(r + 1)), 1), ((T(r + 1), Ts(c + 1)), -1)))
            for choice in product(*factors):
                word = tuple(l for w, _ in choice for l in w)
                coeff = sgn_sigma
                for _, c in choice:
                    coeff *= c
                yield word, coeff


def det_expansion(d: int) -> FormalSum:
    return FormalSum(det_expansion_terms(d))


def product_route_expansion(d: int) -> FormalSum:
    """sum_{tau, eta} sgn(tau) sgn(eta) prod_i [T*_{eta(i)}, T_{tau(i)}]."""
    total = FormalSum()
    perms = list(signed_permutations(d))
    for s_tau, tau in perms:
        for s_eta, eta in perms:
            term = FormalSum.one()
            for i in range(d):
                term = term * commutator_entry(tau[i] + 1, eta[i] + 1)
            total = total + term * (s_tau * s_eta)
    return total


def bs_word_sum(d: int, tau: Sequence[int]) -> FormalSum:
    """sum_eta sgn(eta) T*_{eta(1)} T_{tau(1)} T*_{eta(2)} ... T_{tau(d-1)} T*_{eta(d)}.

    ``tau`` is a 0-based permutation; the word omits the trailing T_{tau(d)}.
    """
    terms = []
    for sign, eta in signed_permutations(d):
        word = []
        for i in range(d):
            word.append(Ts(eta[i] + 1))
            if i < d - 1:
                word.append(T(tau[i] + 1))
        terms.append((tuple(word), sign))
    return FormalSum(terms)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<gen>T(?P<idx>\d+))|(?P<star>\*)|(?P<op>[+-])|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace only
            break
        start = m.start(m.lastgroup)
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", start)
        if m.lastgroup == "gen":
            yield "gen", int(m.group("idx")), start
        elif m.lastgroup == "int":
            yield "int", int(m.group("int")), start
        else:
            yield m.lastgroup, m.group(m.lastgroup), start
        pos = m.end()
    yield "end", None, len(text)


def parse_word_expr(text: str, d: int | None = None) -> FormalSum:
    """Parse e.g. ``"T1* T1 - T1 T1*"`` or ``"2 T1 T2"`` into a FormalSum.

    Grammar: expr := ['-'] term (('+'|'-') term)* ; term := [integer] factor+ ;
    factor := 'T' index ['*'].  With ``d`` given, indices above d are rejected.
    """
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        return tok

    terms: list[tuple[Word, int]] = []
    sign = 1
    if peek()[0] == "op":
        kind, val, at = take()
        sign = -1 if val == "-" else 1
    while True:
        coeff = 1
        if peek()[0] == "int":
            coeff = take()[1]
        letters = []
        while peek()[0] == "gen":
            _, idx, at = take()
            if idx < 1 or (d is not None and idx > d):
                raise ValidationError(f"generator T{idx} at position {at} outside 1..{d}")
            starred = False
            if peek()[0] == "star":
                take()
                starred = True
            letters.append(Letter(idx, starred))
        if not letters:
            kind, val, at = peek()
            what = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected a factor T<index>, found {what}", at)
        terms.append((tuple(letters), sign * coeff))
        kind, val, at = peek()
        if kind == "end":
            break
        if kind != "op":
            raise ParseError(f"expected '+', '-' or end of input, found {val!r}", at)
        take()
        sign = -1 if val == "-" else 1
    return FormalSum(terms)
