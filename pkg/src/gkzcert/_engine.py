"""Packed-monomial Buchberger kernel used by :mod:`gkzcert.groebner`.

Monomials are packed into one int with a 16-bit field per variable whose top
bit is a guard, so ``m1 * m2`` is integer addition and divisibility is one
subtraction and a mask test.  Every supported order is a linear functional
of the exponent vector, so order keys add under multiplication and are
carried alongside terms.  Coefficients are ``gmpy2.mpq``.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from gmpy2 import mpq

from .poly import MonomialOrder, Polynomial

FIELD = 16
MAX_EXP = (1 << (FIELD - 1)) - 1


class ExponentOverflow(ArithmeticError):
    pass


class Engine:
    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.order = order
        self.coeffs = order.linear_form(nvars)
        self.shifts = [FIELD * i for i in range(nvars)]
        self.guard = sum(1 << (s + FIELD - 1) for s in self.shifts)
        self.fmask = (1 << FIELD) - 1

    # monomials ------------------------------------------------------------
    def pack(self, m) -> int:
        P = 0
        for e, s in zip(m, self.shifts):
            if e > MAX_EXP:
                raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXP}")
            P |= e << s
        return P

    def unpack(self, P: int) -> tuple:
        fm = self.fmask
        return tuple((P >> s) & fm for s in self.shifts)

    def key(self, m) -> int:
        return sum(c * e for c, e in zip(self.coeffs, m))

    def divides(self, g: int, m: int) -> bool:
        return ((m | self.guard) - g) & self.guard == self.guard

    def lcm(self, a: int, b: int) -> int:
        fm = self.fmask
        P = 0
        for s in self.shifts:
            x, y = (a >> s) & fm, (b >> s) & fm
            P |= (x if x > y else y) << s
        return P

    def coprime(self, a: int, b: int) -> bool:
        fm = self.fmask
        for s in self.shifts:
            if (a >> s) & fm and (b >> s) & fm:
                return False
        return True

    # polynomials ----------------------------------------------------------
    def from_poly(self, f: Polynomial) -> dict:
        """Internal form: ``{packed: [key, coeff]}``."""
        return {self.pack(m): [self.key(m), mpq(c.numerator, c.denominator)] for m, c in f.terms.items()}

    def to_poly(self, p: dict) -> Polynomial:
        return Polynomial._raw(
            {self.unpack(P): Fraction(int(c.numerator), int(c.denominator)) for P, (_, c) in p.items()},
            self.nvars,
        )

    @staticmethod
    def leading(p: dict):
        P = max(p, key=lambda q: p[q][0])
        return P, p[P][0], p[P][1]

    def reducer(self, p: dict) -> "Reducer":
        return Reducer(self, p)

    def normal_form(self, p: dict, reducers: list, full: bool = True) -> dict:
        """Remainder of ``p`` under division by ``reducers`` (full reduction by default)."""
        guard = self.guard
        work = {P: v[1] for P, v in p.items()}
        keys = {P: v[0] for P, v in p.items()}
        heap = [(-k, P) for P, k in keys.items()]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = work.get(m)
            if c is None:
                continue
            mg = m | guard
            red = None
            for g in reducers:
                if (mg - g.lm) & guard == guard:
                    red = g
                    break
            del work[m]
            if red is None:
                rem[m] = [keys[m], c]
                if not full:
                    # keep the rest untouched
                    for P, v in work.items():
                        rem[P] = [keys[P], v]
                    return rem
                continue
            shift = m - red.lm
            kshift = keys[m] - red.lk
            for gm, gk, gc in red.tail:
                mm = shift + gm
                v = work.get(mm)
                if v is None:
                    if mm & guard:
                        raise ExponentOverflow("exponent overflow during reduction")
                    work[mm] = -c * gc
                    k = kshift + gk
                    keys[mm] = k
                    heapq.heappush(heap, (-k, mm))
                else:
                    s = v - c * gc
                    if s:
                        work[mm] = s
                    else:
                        del work[mm]
        return rem

    def monic(self, p: dict) -> dict:
        _, _, lc = self.leading(p)
        if lc == 1:
            return p
        return {P: [k, c / lc] for P, (k, c) in p.items()}

    def spoly(self, a: "Reducer", b: "Reducer") -> dict:
        lcm = self.lcm(a.lm, b.lm)
        sa, sb = lcm - a.lm, lcm - b.lm
        ka = self.key(self.unpack(sa))
        kb = self.key(self.unpack(sb))
        out: dict = {}
        for m, k, c in a.tail:
            mm = m + sa
            out[mm] = [k + ka, c]
        for m, k, c in b.tail:
            mm = m + sb
            v = out.get(mm)
            if v is None:
                out[mm] = [k + kb, -c]
            else:
                s = v[1] - c
                if s:
                    v[1] = s
                else:
                    del out[mm]
        return out

    # algorithms -----------------------------------------------------------
    def autoreduce(self, polys: list[dict]) -> list[dict]:
        work = [self.monic(p) for p in polys if p]
        changed = True
        while changed:
            changed = False
            for i in range(len(work)):
                p = work[i]
                if p is None:
                    continue
                others = [Reducer(self, q) for j, q in enumerate(work) if j != i and q is not None]
                rem = self.normal_form(p, others)
                if rem.keys() != p.keys() or any(rem[P][1] != p[P][1] for P in p):
                    changed = True
                    work[i] = self.monic(rem) if rem else None
        return [p for p in work if p is not None]

    def interreduce(self, polys: list[dict]) -> list[dict]:
        """Reduced basis from a Groebner basis, sorted by descending leading monomial."""
        polys = [self.monic(p) for p in polys if p]
        lead = [self.leading(p) for p in polys]
        keep = []
        for i, p in enumerate(polys):
            lm = lead[i][0]
            redundant = any(
                j != i and self.divides(lead[j][0], lm) and (lead[j][0] != lm or j < i)
                for j in range(len(polys))
            )
            if not redundant:
                keep.append(p)
        out = []
        for i, p in enumerate(keep):
            others = [Reducer(self, q) for j, q in enumerate(keep) if j != i]
            P, k, c = self.leading(p)
            tail = {m: v for m, v in p.items() if m != P}
            rem = self.normal_form(tail, others)
            rem[P] = [k, c]
            out.append(self.monic(rem))
        out.sort(key=lambda q: -self.leading(q)[1])
        return out

    def is_unit(self, p: dict) -> bool:
        return self.leading(p)[0] == 0

    def groebner(self, polys: list[dict]) -> list[dict]:
        """Buchberger with the Gebauer-Moeller pair update and normal selection."""
        polys = [p for p in polys if p]
        if not polys:
            return []
        if any(self.is_unit(p) for p in polys):
            return [{0: [0, mpq(1)]}]
        G: list[Reducer] = []
        active: list[int] = []
        pairs: list = []  # heap of (lcm key, i, j, lcm): smallest lcm first

        def update(h: dict):
            nonlocal pairs, active
            r = Reducer(self, h)
            k = len(G)
            G.append(r)
            hl = r.lm
            cand = [(i, self.lcm(hl, G[i].lm)) for i in active]
            new_pairs = []
            seen = set()
            coprime_lcms = set()
            for idx, (i, lcm) in enumerate(cand):
                if self.coprime(hl, G[i].lm):
                    coprime_lcms.add(lcm)
            for idx, (i, lcm) in enumerate(cand):
                if lcm in coprime_lcms or lcm in seen:
                    continue
                if any(l2 != lcm and self.divides(l2, lcm) for _, l2 in cand):
                    continue
                seen.add(lcm)
                new_pairs.append((self.key(self.unpack(lcm)), i, k, lcm))
            pairs = [
                t
                for t in pairs
                if not (
                    self.divides(hl, t[3])
                    and self.lcm(G[t[1]].lm, hl) != t[3]
                    and self.lcm(G[t[2]].lm, hl) != t[3]
                )
            ]
            pairs.extend(new_pairs)
            heapq.heapify(pairs)
            active = [i for i in active if not self.divides(hl, G[i].lm)] + [k]

        for p in self.autoreduce(polys):
            update(p)
        while pairs:
            _, i, j, _ = heapq.heappop(pairs)
            s = self.spoly(G[i], G[j])
            if not s:
                continue
            rem = self.normal_form(s, [G[a] for a in active])
            if not rem:
                continue
            if self.is_unit(rem):
                return [{0: [0, mpq(1)]}]
            update(self.monic(rem))
        return self.interreduce([G[a].poly for a in active])


class Reducer:
    __slots__ = ("lm", "lk", "tail", "poly")

    def __init__(self, eng: Engine, p: dict):
        P, k, c = eng.leading(p)
        self.lm = P
        self.lk = k
        self.tail = [(m, v[0], v[1] / c) for m, v in p.items() if m != P]
        self.poly = p if c == 1 else eng.monic(p)
