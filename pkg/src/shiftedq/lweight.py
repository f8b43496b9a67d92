"""The l-weight monoid over the q-lattice.

A monomial is a finite product of variables Psi_{i,q^r} (node i, integer
shift r) with an exact ConstantFactor prefactor.  All generator families
(Y, Y-tilde, A, Lambda, Z, Psi-tilde, Psi-star) expand into this currency.
Spectral parameters are restricted to a single lattice q^Z.
"""

from __future__ import annotations

import json

from .kernel import exps_combine
from .scalars import ConstantFactor
from .smith import solve_rational

GENERATOR_KINDS = ("Psi", "Y", "Ytilde", "A", "Lambda", "Z", "PsiTilde", "PsiStar")


class LWeightMonomial:
    __slots__ = ("cd", "exps", "const", "_key")

    def __init__(self, cd, exps=None, const=None):
        self.cd = cd
        self.exps = {k: e for k, e in (exps or {}).items() if e}
        self.const = const if const is not None else cd.const_one()
        self._key = None

    # -- monoid law -----------------------------------------------------
    def combine(self, other, sign=1):
        if other.cd != self.cd:
            raise ValueError("monomials over different Cartan data")
        return LWeightMonomial(
            self.cd,
            exps_combine(self.exps, other.exps, sign),
            self.const.mul(other.const, sign),
        )

    def __mul__(self, other):
        return self.combine(other, 1)

    def __truediv__(self, other):
        return self.combine(other, -1)

    def pow(self, k):
        if k == 0:
            return LWeightMonomial(self.cd)
        return LWeightMonomial(
            self.cd, {s: e * k for s, e in self.exps.items()}, self.const.pow(k)
        )

    def monomial_part(self):
        return LWeightMonomial(self.cd, self.exps)

    def with_const(self, const):
        return LWeightMonomial(self.cd, self.exps, const)

    def is_one(self):
        return not self.exps and self.const.is_one()

    def key(self):
        if self._key is None:
            self._key = (
                tuple(sorted(self.exps.items())),
                self.const.qexps,
                self.const.zetas,
            )
        return self._key

    def exps_key(self):
        return tuple(sorted(self.exps.items()))

    def __eq__(self, other):
        return (
            isinstance(other, LWeightMonomial)
            and self.cd == other.cd
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if not self.exps:
            body = "1"
        else:
            body = " ".join(
                f"Psi[{i},{r}]^{e}" if e != 1 else f"Psi[{i},{r}]"
                for (i, r), e in sorted(self.exps.items())
            )
        if self.const.is_one():
            return body
        return f"{self.const} {body}"

    # -- degrees ----------------------------------------------------------
    def coweight(self):
        """alpha_i(mu) per node: total Psi-exponent at each node."""
        out = [0] * self.cd.n
        for (i, _), e in self.exps.items():
            out[i - 1] += e
        return tuple(out)

    def node_exps(self, i):
        """shift -> exponent at node i."""
        return {r: e for (j, r), e in self.exps.items() if j == i}

    # -- serialization ------------------------------------------------
    def to_json(self):
        return {
            "exps": [[i, r, e] for (i, r), e in sorted(self.exps.items())],
            "const": self.const.to_json(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(cd, data):
        exps = {}
        for i, r, e in data["exps"]:
            k = (int(i), int(r))
            exps[k] = exps.get(k, 0) + int(e)
        const = (
            ConstantFactor.from_json(data["const"], cd.M)
            if "const" in data and data["const"]
            else cd.const_one()
        )
        if const.n != cd.n:
            raise ValueError("constant length does not match rank")
        return LWeightMonomial(cd, exps, const)


def coweight_of(m):
    return m.coweight()


def combine(m1, m2, sign=1):
    return m1.combine(m2, sign)


# ---------------------------------------------------------------------------
# generator dictionary
# ---------------------------------------------------------------------------

def generator(cd, kind, i, r):
    """Expansion of the named generator at node i, spectral parameter q^r."""
    if i not in cd.nodes():
        raise ValueError(f"node {i} out of range for {cd.type_label}")
    if kind == "Psi":
        return LWeightMonomial(cd, {(i, r): 1})
    if kind == "Y":
        ri = cd.ri(i)
        return LWeightMonomial(
            cd, {(i, r - ri): 1, (i, r + ri): -1}, cd.omega_bar(i)
        )
    if kind == "Ytilde":
        ri = cd.ri(i)
        return LWeightMonomial(cd, {(i, r - ri): 1, (i, r + ri): -1})
    if kind == "A":
        exps = {}
        for j in cd.nodes():
            b = cd.b(i, j)
            if b:
                exps = exps_combine(exps, {(j, r + b): -1, (j, r - b): 1}, 1)
        return LWeightMonomial(cd, exps, cd.alpha_bar(i))
    if kind == "Lambda":
        ri = cd.ri(i)
        exps = {(i, r - ri): 1}
        exps = exps_combine(exps, {(i, r + ri): 1}, 1)
        for j in cd.nodes():
            c = cd.c(i, j)
            if c == -1:
                offs = (0,)
            elif c == -2:
                offs = (-1, 1)
            elif c == -3:
                offs = (-2, 0, 2)
            else:
                continue
            for o in offs:
                exps = exps_combine(exps, {(j, r + o): -1}, 1)
        return LWeightMonomial(cd, exps)
    if kind == "PsiTilde":
        ri = cd.ri(i)
        exps = {(i, r): -1}
        for j in cd.nodes():
            c = cd.c(i, j)
            if c == -1:
                offs = (ri,)
            elif c == -2:
                offs = (0, 2)
            elif c == -3:
                offs = (-1, 1, 3)
            else:
                continue
            for o in offs:
                exps = exps_combine(exps, {(j, r + o): 1}, 1)
        return LWeightMonomial(cd, exps)
    if kind == "PsiStar":
        exps = {(i, r): -1}
        for j in cd.nodes():
            if cd.c(i, j):
                exps = exps_combine(exps, {(j, r - cd.b(i, j)): 1}, 1)
        return LWeightMonomial(cd, exps)
    if kind == "Z":
        ri, lac = cd.ri(i), cd.lacing
        if ri == lac:
            shifts = (r,)
        elif ri == lac - 1:
            shifts = (r - 1, r + 1)
        elif ri == lac - 2:
            shifts = (r - 2, r, r + 2)
        else:
            raise ValueError(f"node {i}: r_i = {ri} incompatible with lacing {lac}")
        out = LWeightMonomial(cd)
        for s in shifts:
            out = out * generator(cd, "Y", i, s)
        return out
    raise ValueError(f"unknown generator kind {kind!r}")


def expand_in_basis(cd, basis, vmap):
    """Oracle: the monomial prod basis_{i,q^u}^{v} for vmap {(i,u): v}."""
    out = LWeightMonomial(cd)
    for (i, u), v in sorted(vmap.items()):
        if v:
            out = out * generator(cd, basis, i, u).pow(v)
    return out


# ---------------------------------------------------------------------------
# factorization in the A / Lambda bases
# ---------------------------------------------------------------------------

def _basis_pattern(cd, basis, j):
    """Contributions of basis_{j, q^0} as {(k, offset): coeff}."""
    pat = {}
    if basis == "A":
        for k in cd.nodes():
            b = cd.b(j, k)
            if b:
                pat[(k, b)] = pat.get((k, b), 0) - 1
                pat[(k, -b)] = pat.get((k, -b), 0) + 1
    elif basis == "Lambda":
        rj = cd.ri(j)
        pat[(j, -rj)] = pat.get((j, -rj), 0) + 1
        pat[(j, rj)] = pat.get((j, rj), 0) + 1
        for k in cd.nodes():
            c = cd.c(j, k)
            if c == -1:
                offs = (0,)
            elif c == -2:
                offs = (-1, 1)
            elif c == -3:
                offs = (-2, 0, 2)
            else:
                continue
            for o in offs:
                pat[(k, o)] = pat.get((k, o), 0) - 1
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return {ko: c for ko, c in pat.items() if c}


def _greedy_factor(m, basis):
    """Fast path for rank 1 / simply-laced: peel from the top shift."""
    cd = m.cd
    work = dict(m.exps)
    pat = {j: _basis_pattern(cd, basis, j) for j in cd.nodes()}
    top_off = {j: max(o for (_, o) in pat[j]) for j in cd.nodes()}
    sign = 1 if basis == "Lambda" else -1
    out = {}
    steps = 0
    while work:
        steps += 1
        if steps > 10000:
            return None
        t = max(r for (_, r) in work)
        # at the global top shift, only the own-column top can contribute
        k = min(j for (j, r) in work if r == t)
        u = t - top_off[k]
        v = sign * work[(k, t)]
        out[(k, u)] = out.get((k, u), 0) + v
        for (kk, o), c in pat[k].items():
            s = work.get((kk, u + o), 0) - c * v
            if s:
                work[(kk, u + o)] = s
            else:
                work.pop((kk, u + o), None)
    return out


def factor_in_basis(m, basis):
    """Exponent map v with monomial(m) = prod basis_{i,q^u}^{v_{i,u}}, or None.

    The constant prefactor of m is ignored.  Solution is unique when it
    exists (invertibility of the quantum Cartan matrix); computed by an
    exact windowed linear solve, with a greedy fast path in the unmixed
    cases, verified by re-expansion.
    """
    cd = m.cd
    if not m.exps:
        return {}
    if basis == "A" and any(m.coweight()):
        return None  # A-monomials are degree 0 at every node
    if cd.lacing == 1 or cd.n == 1:
        v = _greedy_factor(m, basis)
        if v is not None:
            v = {k: e for k, e in v.items() if e}
            if expand_in_basis(cd, basis, v).exps == m.exps:
                return v
    lo = min(r for (_, r) in m.exps)
    hi = max(r for (_, r) in m.exps)
    pad = max(2 * max(cd.r), max(abs(b) for row in cd.B for b in row))
    cols = [(j, u) for j in cd.nodes() for u in range(lo - pad, hi + pad + 1)]
    col_index = {c: k for k, c in enumerate(cols)}
    rows = [(k, t) for k in cd.nodes() for t in range(lo - 2 * pad, hi + 2 * pad + 1)]
    A = [[0] * len(cols) for _ in rows]
    row_index = {rr: k for k, rr in enumerate(rows)}
    for (j, u) in cols:
        for (k, o), c in _basis_pattern(cd, basis, j).items():
            rr = row_index.get((k, u + o))
            if rr is not None:
                A[rr][col_index[(j, u)]] += c
    b = [m.exps.get(rr, 0) for rr in rows]
    x, consistent, unique = solve_rational(A, b)
    if not consistent:
        return None
    assert unique, "windowed factorization system should be determined"
    out = {}
    for c, val in zip(cols, x):
        if val:
            if val.denominator != 1:
                return None
            out[c] = int(val)
    if expand_in_basis(cd, basis, out).exps != m.exps:
        return None
    return out


# ---------------------------------------------------------------------------
# dominance, partial orders, sign-twist equality
# ---------------------------------------------------------------------------

def is_dominant(m):
    """True iff m/const is a product of Y-tilde_{i,a} and Psi_{i,a} factors.

    Per node, every -1 exponent at shift t must pair injectively with a +1
    at t - 2k r_i (k >= 1): a prefix-sum test per residue class mod 2 r_i.
    """
    cd = m.cd
    for i in cd.nodes():
        step = 2 * cd.ri(i)
        byres = {}
        for r, e in m.node_exps(i).items():
            byres.setdefault(r % step, []).append((r, e))
        for seq in byres.values():
            total = 0
            for _, e in sorted(seq):
                total += e
                if total < 0:
                    return False
    return True


def dominant_factorization(m):
    """Split a dominant monomial into Y-tilde chains and leftover Psi factors.

    Returns (chains, leftovers) with chains a list of (i, s, k) meaning
    prod_{l=0..k-1} Ytilde_{i, s + r_i + 2 l r_i}  (exponents +1 at s and
    -1 at s + 2 k r_i), and leftovers {(i, t): e >= 0}.  LIFO matching per
    residue class; raises if m is not dominant.
    """
    cd = m.cd
    chains = []
    leftovers = {}
    for i in cd.nodes():
        step = 2 * cd.ri(i)
        byres = {}
        for r, e in m.node_exps(i).items():
            byres.setdefault(r % step, []).append((r, e))
        for seq in byres.values():
            stack = []  # open +1 shifts, multiplicity-expanded
            for r, e in sorted(seq):
                if e > 0:
                    stack.extend([r] * e)
                else:
                    for _ in range(-e):
                        if not stack:
                            raise ValueError("monomial is not dominant")
                        s = stack.pop()
                        chains.append((i, s, (r - s) // step))
            for s in stack:
                leftovers[(i, s)] = leftovers.get((i, s), 0) + 1
    return sorted(chains), leftovers


def leq(m_low, m_high, order="nakajima"):
    """m_low <= m_high: their ratio is a nonnegative monomial in A (nakajima)
    or Lambda (zorder) generators.  Constants are ignored (raw comparison)."""
    basis = {"nakajima": "A", "zorder": "Lambda"}[order]
    diff = m_high.combine(m_low, -1)
    v = factor_in_basis(diff, basis)
    return v is not None and all(e >= 0 for e in v.values())


def leq_certificate(m_low, m_high, order="nakajima"):
    basis = {"nakajima": "A", "zorder": "Lambda"}[order]
    diff = m_high.combine(m_low, -1)
    return factor_in_basis(diff, basis)


def equal_mod_signtwist(m1, m2):
    """Equal monomial parts and constants differing by an element of K."""
    if m1.cd != m2.cd:
        return False
    if m1.exps != m2.exps:
        return False
    return m1.cd.in_K(m1.const.mul(m2.const, -1))
