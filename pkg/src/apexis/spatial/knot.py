"""Signed Gauss codes, the Kauffman bracket, and Reidemeister moves on codes.

A code is a cyclic sequence of crossing passages ``(id, over)`` in which
every id occurs twice, once over and once under, together with a sign per
crossing.  Position ``j`` to ``j + 1`` (cyclically) is arc ``j``.

The planar structure is read off the signs: at a crossing with over passage
``o`` and under passage ``u`` the counter-clockwise order of half-edges is
``o_out, u_out, o_in, u_in`` for sign +1 and ``o_out, u_in, o_in, u_out`` for
sign -1.  Tracing faces with this rotation gives ``n + 2`` faces exactly when
the code is realisable in the plane; R2 and R3 are applied only across
genuine bigon and triangle faces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "LaurentPolynomial",
    "GaussCode",
    "CrossingBudgetError",
    "kauffman_bracket",
    "jones",
    "writhe",
    "faces",
    "is_realisable",
    "find_moves",
    "apply_move",
    "simplify",
    "replay",
    "insert_r1",
    "insert_r2",
    "MAX_CROSSINGS",
]

MAX_CROSSINGS = 16


class CrossingBudgetError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials


class LaurentPolynomial:
    """Integer Laurent polynomial in one variable, stored as ``{exp: coeff}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exp: coeff})

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        out = LaurentPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def substitute_power(self, k: int) -> "LaurentPolynomial":
        """Exponents divided by ``k`` (exact); used for ``A = t^(-1/4)``."""
        out = {}
        for e, c in self.terms.items():
            if e % k:
                raise ValueError(f"exponent {e} not divisible by {k}")
            out[e // k] = c
        return LaurentPolynomial(out)

    def to_dict(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.terms.items())}

    def __repr__(self) -> str:
        return f"LaurentPolynomial({dict(sorted(self.terms.items()))})"

    def format(self, var: str = "t") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = abs(c)
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __str__ = format


# ---------------------------------------------------------------------------
# codes


@dataclass(frozen=True)
class GaussCode:
    """``seq[i] = (crossing id, over?)``; ``signs[id]`` is +1 or -1."""

    seq: tuple[tuple[int, bool], ...]
    signs: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, seq: Iterable[tuple[int, bool]], signs: Mapping[int, int]) -> "GaussCode":
        seq = tuple((int(c), bool(o)) for c, o in seq)
        used = {c for c, _ in seq}
        code = cls(seq, tuple(sorted((c, int(signs[c])) for c in used)))
        code.validate()
        return code

    @classmethod
    def parse(cls, text: str) -> "GaussCode":
        """Parse ``"1o+ 2u+ ..."``: id, ``o``/``u``, sign (``+``/``-``)."""
        seq = []
        signs: dict[int, int] = {}
        for tok in text.split():
            cid, ou, sg = int(tok[:-2]), tok[-2], tok[-1]
            if ou not in "ou" or sg not in "+-":
                raise ValueError(f"bad passage token {tok!r}")
            s = 1 if sg == "+" else -1
            if signs.setdefault(cid, s) != s:
                raise ValueError(f"crossing {cid} has inconsistent signs")
            seq.append((cid, ou == "o"))
        return cls.make(seq, signs)

    def __str__(self) -> str:
        sg = self.sign_map
        return " ".join(f"{c}{'o' if o else 'u'}{'+' if sg[c] > 0 else '-'}" for c, o in self.seq)

    @property
    def sign_map(self) -> dict[int, int]:
        return dict(self.signs)

    @property
    def crossings(self) -> list[int]:
        return sorted(c for c, _ in self.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def validate(self) -> None:
        seen: dict[int, list[bool]] = {}
        for c, o in self.seq:
            seen.setdefault(c, []).append(o)
        for c, os_ in seen.items():
            if len(os_) != 2 or sorted(os_) != [False, True]:
                raise ValueError(f"crossing {c} must occur once over and once under")
        if set(seen) != {c for c, _ in self.signs}:
            raise ValueError("sign table does not match the crossings of the code")
        for c, s in self.signs:
            if s not in (1, -1):
                raise ValueError(f"crossing {c} has sign {s}")

    def positions(self) -> dict[int, tuple[int, int]]:
        """``id -> (over position, under position)``."""
        over: dict[int, int] = {}
        under: dict[int, int] = {}
        for i, (c, o) in enumerate(self.seq):
            (over if o else under)[c] = i
        return {c: (over[c], under[c]) for c in over}

    def without(self, ids: Iterable[int]) -> "GaussCode":
        drop = set(ids)
        return GaussCode(tuple(p for p in self.seq if p[0] not in drop),
                         tuple(s for s in self.signs if s[0] not in drop))

    def key(self) -> tuple:
        """Invariant under cyclic rotation and renaming of crossing ids."""
        n = len(self.seq)
        if not n:
            return ()
        sg = self.sign_map
        best = None
        for r in range(n):
            names: dict[int, int] = {}
            word = []
            for k in range(n):
                c, o = self.seq[(r + k) % n]
                if c not in names:
                    names[c] = len(names)
                word.append((names[c], o, sg[c]))
            t = tuple(word)
            if best is None or t < best:
                best = t
        return best


def writhe(code: GaussCode) -> int:
    return sum(s for _, s in code.signs)


# ---------------------------------------------------------------------------
# bracket


def _ends(code: GaussCode):
    """Per crossing: (o_in, o_out, u_in, u_out) as end ids ``2*arc + side``.

    Side 0 is an arc's start, side 1 its end.
    """
    m = len(code.seq)
    out = {}
    for c, (p, q) in code.positions().items():
        out[c] = (2 * ((p - 1) % m) + 1, 2 * p, 2 * ((q - 1) % m) + 1, 2 * q)
    return out


def _smoothing_pairs(sign: int, o_in: int, o_out: int, u_in: int, u_out: int):
    if sign > 0:
        a = ((u_out, o_in), (u_in, o_out))
        b = ((o_out, u_out), (o_in, u_in))
    else:
        a = ((u_in, o_in), (u_out, o_out))
        b = ((o_out, u_in), (o_in, u_out))
    return a, b


def kauffman_bracket(code: GaussCode) -> LaurentPolynomial:
    """State sum ``sum A^(#A - #B) d^(loops - 1)``, ``d = -A^2 - A^-2``."""
    n = len(code)
    if n > MAX_CROSSINGS:
        raise CrossingBudgetError(f"{n} crossings exceed the budget of {MAX_CROSSINGS}")
    if n == 0:
        return LaurentPolynomial({0: 1})
    m = len(code.seq)
    ends = _ends(code)
    sg = code.sign_map
    pairs = [_smoothing_pairs(sg[c], *ends[c]) for c in sorted(ends)]
    # loops per state, grouped by (#A - #B, loops)
    tally: dict[tuple[int, int], int] = {}
    for state in range(1 << n):
        parent = list(range(m))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        loops = m
        na = 0
        for i in range(n):
            if state >> i & 1:
                chosen = pairs[i][0]
                na += 1
            else:
                chosen = pairs[i][1]
            for x, y in chosen:
                rx, ry = find(x >> 1), find(y >> 1)
                if rx != ry:
                    parent[rx] = ry
                    loops -= 1
        k = (na - (n - na), loops)
        tally[k] = tally.get(k, 0) + 1
    d = LaurentPolynomial({2: -1, -2: -1})
    total = LaurentPolynomial()
    for (exp, loops), mult in tally.items():
        total = total + LaurentPolynomial({exp: mult}) * (d ** (loops - 1))
    return total


def jones(code: GaussCode) -> LaurentPolynomial:
    """Jones polynomial in ``t`` via ``(-A^3)^(-w) <K>`` and ``A = t^(-1/4)``."""
    w = writhe(code)
    f = kauffman_bracket(code) * LaurentPolynomial({-3 * w: -1 if w % 2 else 1})
    return f.substitute_power(-4)


# ---------------------------------------------------------------------------
# planar structure


def _rotation(code: GaussCode) -> dict[int, int]:
    """Counter-clockwise successor of each end around its crossing."""
    succ = {}
    sg = code.sign_map
    for c, (o_in, o_out, u_in, u_out) in _ends(code).items():
        cyc = (o_out, u_out, o_in, u_in) if sg[c] > 0 else (o_out, u_in, o_in, u_out)
        for i in range(4):
            succ[cyc[i]] = cyc[(i + 1) % 4]
    return succ


def faces(code: GaussCode) -> list[list[tuple[int, int]]]:
    """Faces as lists of darts ``(arc, +1 forward | -1 backward)``."""
    m = len(code.seq)
    if m == 0:
        return [[], []]
    succ = _rotation(code)
    seen = set()
    out = []
    for arc in range(m):
        for d in (1, -1):
            if (arc, d) in seen:
                continue
            face = []
            cur = (arc, d)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                a, dd = cur
                arrive = 2 * a + 1 if dd == 1 else 2 * a  # end reached
                nxt = succ[arrive]
                cur = (nxt >> 1, 1 if nxt & 1 == 0 else -1)
            out.append(face)
    return out


def is_realisable(code: GaussCode) -> bool:
    return len(faces(code)) == len(code) + 2


# ---------------------------------------------------------------------------
# moves

Move = tuple  # ("R1", (c,)) | ("R2", (c, d)) | ("R3", (a, b, c))


def _arc_info(code: GaussCode, arc: int):
    m = len(code.seq)
    return code.seq[arc], code.seq[(arc + 1) % m]


def find_moves(code: GaussCode, kinds: str = "123") -> list[Move]:
    """Applicable simplifying (R1, R2) and sliding (R3) moves, deterministic order."""
    m = len(code.seq)
    moves: list[Move] = []
    if not m:
        return moves
    sg = code.sign_map
    if "1" in kinds:
        for j in range(m):
            (c1, _), (c2, _) = _arc_info(code, j)
            if c1 == c2:
                moves.append(("R1", (c1,)))
    fs = faces(code) if ("2" in kinds or "3" in kinds) else []
    if "2" in kinds:
        for f in fs:
            if len(f) != 2:
                continue
            (j, _), (k, _) = f
            (a1, o1), (b1, p1) = _arc_info(code, j)
            (a2, o2), (b2, p2) = _arc_info(code, k)
            if a1 == b1 or {a1, b1} != {a2, b2}:
                continue
            if o1 == p1 and o2 == p2 and o1 != o2 and sg[a1] != sg[b1]:
                moves.append(("R2", tuple(sorted((a1, b1)))))
    if "3" in kinds:
        for f in fs:
            if len(f) != 3:
                continue
            arcs = [j for j, _ in f]
            infos = [_arc_info(code, j) for j in arcs]
            corners = set()
            for (x, _), (y, _) in infos:
                corners.update((x, y))
            if len(corners) != 3 or any(x == y for (x, _), (y, _) in infos):
                continue
            if any(o and p for (_, o), (_, p) in infos):
                moves.append(("R3", tuple(sorted(corners))))
    out = []
    for mv in moves:
        if mv not in out:
            out.append(mv)
    return out


def apply_move(code: GaussCode, move: Move) -> GaussCode:
    """Apply ``move``; raises ``ValueError`` if it is not applicable."""
    kind, ids = move
    if move not in find_moves(code, kind[1]):
        raise ValueError(f"move {move} is not applicable to {code}")
    if kind in ("R1", "R2"):
        return code.without(ids)
    # R3: swap the two passages along each triangle arc
    m = len(code.seq)
    corners = set(ids)
    fs = [f for f in faces(code) if len(f) == 3]
    for f in fs:
        arcs = [j for j, _ in f]
        cs = set()
        for j in arcs:
            (x, _), (y, _) = _arc_info(code, j)
            cs.update((x, y))
        if cs == corners:
            seq = list(code.seq)
            for j in arcs:
                a, b = j, (j + 1) % m
                seq[a], seq[b] = seq[b], seq[a]
            out = GaussCode(tuple(seq), code.signs)
            if not is_realisable(out):
                raise ValueError(f"R3 on {ids} produced a non-realisable code")
            return out
    raise ValueError(f"no triangle face with corners {ids}")


def _greedy(code: GaussCode, moves: list[Move]) -> GaussCode:
    while True:
        avail = find_moves(code, "12")
        if not avail:
            return code
        mv = avail[0]
        code = apply_move(code, mv)
        moves.append(mv)


def simplify(code: GaussCode, max_states: int = 5000) -> tuple[GaussCode, list[Move]]:
    """Reduce crossings by greedy R1/R2, then breadth-first search over R3.

    Returns the smallest code reached and the move sequence leading to it.
    """
    moves: list[Move] = []
    start = _greedy(code, moves)
    if len(start) == 0:
        return start, moves
    best = (len(start), start, list(moves))
    seen = {start.key()}
    queue = deque([(start, list(moves))])
    while queue and len(seen) < max_states:
        cur, path = queue.popleft()
        for mv in find_moves(cur, "3"):
            nxt = apply_move(cur, mv)
            npath = path + [mv]
            nxt = _greedy(nxt, npath)
            k = nxt.key()
            if k in seen:
                continue
            seen.add(k)
            if len(nxt) < best[0]:
                best = (len(nxt), nxt, npath)
                if len(nxt) == 0:
                    return nxt, npath
            queue.append((nxt, npath))
    return best[1], best[2]


def replay(code: GaussCode, moves: Iterable[Move]) -> GaussCode:
    for mv in moves:
        code = apply_move(code, mv)
    return code


# ---------------------------------------------------------------------------
# insertions (used to build equivalent diagrams)


def insert_r1(code: GaussCode, arc: int, new_id: int, over_first: bool, sign: int) -> GaussCode:
    """Add a kink on ``arc`` (between positions ``arc`` and ``arc + 1``)."""
    seq = list(code.seq)
    at = (arc + 1) if seq else 0
    seq[at:at] = [(new_id, over_first), (new_id, not over_first)]
    signs = dict(code.signs)
    signs[new_id] = sign
    out = GaussCode.make(seq, signs)
    assert is_realisable(out)
    return out


def insert_r2(code: GaussCode, face_index: int, i: int, k: int, ids: tuple[int, int],
              over_on_first: bool = True) -> GaussCode | None:
    """Push dart ``i`` of a face over (or under) dart ``k`` of the same face.

    Returns ``None`` when no realisable bigon arises from the choice.
    """
    fs = faces(code)
    face = fs[face_index]
    j1, j2 = face[i][0], face[k][0]
    x, y = ids
    m = len(code.seq)
    for order2 in ((x, y), (y, x)):
        for sx in (1, -1):
            if j1 == j2:
                continue
            seq = list(code.seq)
            ins = [(j1 + 1, [(x, over_on_first), (y, over_on_first)]),
                   (j2 + 1, [(order2[0], not over_on_first), (order2[1], not over_on_first)])]
            for at, items in sorted(ins, key=lambda t: -t[0]):
                seq[at:at] = items
            signs = dict(code.signs)
            signs[x] = sx
            signs[y] = -sx
            try:
                cand = GaussCode.make(seq, signs)
            except ValueError:
                continue
            if is_realisable(cand) and ("R2", tuple(sorted(ids))) in find_moves(cand, "2"):
                if cand.without(ids).key() == code.key():
                    return cand
    return None
