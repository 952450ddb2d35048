"""
Structure constants, the GL(V) transport of structure, standard builders and
the JSON algebra file format.

A MulTable stores x_{i,j}^l, the coefficient of e_l in mu(e_i, e_j), as a flat
tuple of QQ elements in the canonical order idx(i, j, l) = (i*n + j)*n + l.
Tensor3 does the same for trilinear maps V^3 -> V with idx3. Indices are
0-based everywhere, algebra files included.

Usage:
    from algebra_core import sl2, transport, to_json
    x = sl2()
    print(to_json(x))
"""

import json
from dataclasses import dataclass, field
from functools import reduce
from itertools import product

from sympy.polys.domains import QQ

from exact_linalg import format_scalar, inverse, parse_scalar, sparse_matrix, to_rows, to_scalar


class AlgebraFormatError(ValueError):
    """Malformed algebra file. Carries the offending line and field when known."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        super().__init__(message)
        self.line = line
        self.field = field


class DimensionMismatchError(ValueError):
    """Operands of different dimensions, or vectors of the wrong length."""


def idx(n: int, i: int, j: int, l: int) -> int:
    return (i * n + j) * n + l


def idx3(n: int, i: int, j: int, k: int, m: int) -> int:
    return ((i * n + j) * n + k) * n + m


def idx1(n: int, a: int, b: int) -> int:
    """C^1 coordinate: coefficient of e_b in f(e_a)."""
    return a * n + b


def unidx(n: int, flat: int) -> tuple:
    return flat // (n * n), (flat // n) % n, flat % n


def unidx3(n: int, flat: int) -> tuple:
    return flat // n**3, (flat // (n * n)) % n, (flat // n) % n, flat % n


def _coerce(values, length: int, what: str) -> tuple:
    values = tuple(to_scalar(v) for v in values)
    if len(values) != length:
        raise DimensionMismatchError(f"{what} needs {length} coefficients, got {len(values)}")
    return values


@dataclass(frozen=True)
class MulTable:
    """A bilinear product mu on V = Q^dim, given by its structure constants."""
    dim: int
    coeffs: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatchError(f"dimension must be at least 1, got {self.dim}")
        object.__setattr__(self, "coeffs", _coerce(self.coeffs, self.dim**3, "MulTable"))

    def c(self, i: int, j: int, l: int):
        n = self.dim
        return self.coeffs[(i * n + j) * n + l]

    def vector(self) -> list:
        return list(self.coeffs)

    def nonzero(self):
        """Yield ((i, j, l), value) over the nonzero structure constants."""
        n = self.dim
        for flat, v in enumerate(self.coeffs):
            if v:
                yield unidx(n, flat), v

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def renamed(self, name: str) -> "MulTable":
        return MulTable(self.dim, self.coeffs, name)

    @classmethod
    def zeros(cls, n: int, name: str = "") -> "MulTable":
        return cls(n, (QQ.zero,) * n**3, name)

    @classmethod
    def from_entries(cls, n: int, entries: dict, name: str = "") -> "MulTable":
        """Build from {(i, j, l): value}; unspecified constants are zero."""
        coeffs = [QQ.zero] * n**3
        for (i, j, l), v in entries.items():
            if not all(0 <= a < n for a in (i, j, l)):
                raise DimensionMismatchError(f"index ({i},{j},{l}) out of range for dim {n}")
            coeffs[idx(n, i, j, l)] = to_scalar(v)
        return cls(n, tuple(coeffs), name)

    @classmethod
    def from_vector(cls, n: int, vec, name: str = "") -> "MulTable":
        return cls(n, tuple(vec), name)


@dataclass(frozen=True)
class Tensor3:
    """A trilinear map V^3 -> V; t(i, j, k, m) is the coefficient of e_m."""
    dim: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coerce(self.coeffs, self.dim**4, "Tensor3"))

    def t(self, i: int, j: int, k: int, m: int):
        return self.coeffs[idx3(self.dim, i, j, k, m)]

    def vector(self) -> list:
        return list(self.coeffs)

    def nonzero(self):
        n = self.dim
        for flat, v in enumerate(self.coeffs):
            if v:
                yield unidx3(n, flat), v

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_nonzero(self):
        """((i, j, k, m), value) of the first nonzero coordinate, or None."""
        return next(self.nonzero(), None)

    def __add__(self, other: "Tensor3") -> "Tensor3":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"cannot add tensors of dim {self.dim} and {other.dim}")
        return Tensor3(self.dim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Tensor3":
        return Tensor3(self.dim, tuple(-a for a in self.coeffs))

    @classmethod
    def from_vector(cls, n: int, vec) -> "Tensor3":
        return cls(n, tuple(vec))


def same_dim(*tables) -> int:
    dims = {t.dim for t in tables}
    if len(dims) != 1:
        raise DimensionMismatchError(f"operands have different dimensions: {sorted(dims)}")
    return dims.pop()


# ---------------------------------------------------------------------------
# Products and operators
# ---------------------------------------------------------------------------
def basis_vector(n: int, i: int) -> list:
    return [QQ.one if k == i else QQ.zero for k in range(n)]


def multiply(x: MulTable, a: list, b: list) -> list:
    """mu(a, b) for coordinate vectors a, b."""
    n = x.dim
    if len(a) != n or len(b) != n:
        raise DimensionMismatchError(f"vectors of length {len(a)}, {len(b)} against dim {n}")
    out = [QQ.zero] * n
    for (i, j, l), v in x.nonzero():
        if a[i] and b[j]:
            out[l] += a[i] * b[j] * v
    return out


def left_operator(x: MulTable, a: list):
    """Matrix of L_a = mu(a, -); column q holds mu(a, e_q)."""
    n = x.dim
    entries = {}
    for (i, q, l), v in x.nonzero():
        if a[i]:
            entries[(l, q)] = entries.get((l, q), QQ.zero) + a[i] * v
    return sparse_matrix(entries, (n, n))


def right_operator(x: MulTable, a: list):
    """Matrix of R_a = mu(-, a); column q holds mu(e_q, a)."""
    n = x.dim
    entries = {}
    for (q, j, l), v in x.nonzero():
        if a[j]:
            entries[(l, q)] = entries.get((l, q), QQ.zero) + a[j] * v
    return sparse_matrix(entries, (n, n))


# ---------------------------------------------------------------------------
# Transport of structure
# ---------------------------------------------------------------------------
def _check_square(g, n: int):
    if g.shape != (n, n):
        raise DimensionMismatchError(f"expected a {n}x{n} matrix, got {g.shape[0]}x{g.shape[1]}")


def _apply_slot(vec: list, n: int, order: int, pos: int, mat: list) -> list:
    """Contract slot `pos` of an order-`order` flat tensor with mat: new[a] = sum_b mat[a][b] old[b]."""
    stride = n ** (order - 1 - pos)
    out = [QQ.zero] * len(vec)
    for flat, v in enumerate(vec):
        if not v:
            continue
        b = (flat // stride) % n
        base = flat - b * stride
        for a in range(n):
            coef = mat[a][b]
            if coef:
                out[base + a * stride] += coef * v
    return out


def _transport_flat(g, vec: list, n: int, inputs: int) -> list:
    _check_square(g, n)
    gm = to_rows(g.convert_to(QQ))
    gi = to_rows(inverse(g.convert_to(QQ)))
    gi_t = [[gi[p][i] for p in range(n)] for i in range(n)]
    order = inputs + 1
    out = _apply_slot(vec, n, order, inputs, gm)
    for pos in range(inputs):
        out = _apply_slot(out, n, order, pos, gi_t)
    return out


def transport(g, x: MulTable) -> MulTable:
    """g.mu = g o mu o (g^-1 x g^-1), in O(n^4) staged contractions.

    Raises SingularMatrixError when g is not invertible.
    """
    return MulTable(x.dim, tuple(_transport_flat(g, x.vector(), x.dim, 2)), x.name)


def transport_tensor3(g, t: Tensor3) -> Tensor3:
    """g.F = g o F o (g^-1 x g^-1 x g^-1)."""
    return Tensor3(t.dim, tuple(_transport_flat(g, t.vector(), t.dim, 3)))


def induced_action(g, n: int, inputs: int = 2):
    """Matrix of the transport action of g on V^{inputs,1}.

    Entry [(i..., l)][(p..., r)] = prod ginv[p][i] ... * g[l][r].
    """
    _check_square(g, n)
    gm = to_rows(g.convert_to(QQ))
    gi = to_rows(inverse(g.convert_to(QQ)))
    size = n ** (inputs + 1)
    entries = {}
    for row_ix in product(range(n), repeat=inputs + 1):
        row = reduce(lambda acc, a: acc * n + a, row_ix, 0)
        for col_ix in product(range(n), repeat=inputs + 1):
            v = gm[row_ix[-1]][col_ix[-1]]
            for s in range(inputs):
                if not v:
                    break
                v *= gi[col_ix[s]][row_ix[s]]
            if v:
                col = reduce(lambda acc, a: acc * n + a, col_ix, 0)
                entries[(row, col)] = v
    return sparse_matrix(entries, (size, size))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------
def matrix_algebra(r: int) -> MulTable:
    """M_r(Q) with basis E_ab at index a*r + b; E_ab E_cd = [b == c] E_ad."""
    if r < 1:
        raise ValueError(f"matrix_algebra needs r >= 1, got {r}")
    n = r * r
    entries = {}
    for a, b, d in product(range(r), repeat=3):
        entries[(a * r + b, b * r + d, a * r + d)] = 1
    return MulTable.from_entries(n, entries, f"M{r}")


def split_etale(n: int) -> MulTable:
    """Q^n with idempotent basis: e_i e_i = e_i."""
    return MulTable.from_entries(n, {(i, i, i): 1 for i in range(n)}, f"Q^{n}")


def abelian(n: int) -> MulTable:
    return MulTable.zeros(n, f"abelian{n}")


def dual_numbers() -> MulTable:
    """Q[e]/(e^2): e0 is the unit, e1 e1 = 0."""
    return MulTable.from_entries(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}, "dual")


def sl2() -> MulTable:
    """sl_2 in the basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    entries = {
        (0, 1, 1): 2, (1, 0, 1): -2,
        (0, 2, 2): -2, (2, 0, 2): 2,
        (1, 2, 0): 1, (2, 1, 0): -1,
    }
    return MulTable.from_entries(3, entries, "sl2")


def leibniz2() -> MulTable:
    """Two-dimensional Leibniz algebra with e1 e1 = e0, not Lie."""
    return MulTable.from_entries(2, {(1, 1, 0): 1}, "leib2")


def direct_sum(x: MulTable, y: MulTable) -> MulTable:
    """Block direct sum; y's basis follows x's."""
    n1, n = x.dim, x.dim + y.dim
    entries = {key: v for key, v in x.nonzero()}
    for (i, j, l), v in y.nonzero():
        entries[(i + n1, j + n1, l + n1)] = v
    return MulTable.from_entries(n, entries, f"{x.name}+{y.name}")


def semisimple_algebra(profile) -> MulTable:
    """M_{r1} x ... x M_{rk} for a block profile such as (2, 1)."""
    profile = tuple(int(r) for r in profile)
    if not profile:
        raise ValueError("empty block profile")
    x = reduce(direct_sum, (matrix_algebra(r) for r in profile))
    return x.renamed("x".join(f"M{r}" for r in profile))


def _int_arg(arg, default: int) -> int:
    if arg is None:
        return default
    try:
        return int(arg)
    except ValueError:
        raise ValueError(f"expected an integer builder argument, got {arg!r}")


def _profile_arg(arg) -> tuple:
    if arg is None:
        return (2, 1)
    try:
        return tuple(int(part) for part in str(arg).split(","))
    except ValueError:
        raise ValueError(f"expected a block profile like '2,1', got {arg!r}")


BUILDERS = {
    "matrix_algebra": lambda arg: matrix_algebra(_int_arg(arg, 2)),
    "m2": lambda arg: matrix_algebra(2),
    "split_etale": lambda arg: split_etale(_int_arg(arg, 2)),
    "dual_numbers": lambda arg: dual_numbers(),
    "sl2": lambda arg: sl2(),
    "sl2xsl2": lambda arg: direct_sum(sl2(), sl2()).renamed("sl2xsl2"),
    "abelian": lambda arg: abelian(_int_arg(arg, 2)),
    "leibniz2": lambda arg: leibniz2(),
    "semisimple": lambda arg: semisimple_algebra(_profile_arg(arg)),
}


def build(name: str, arg: str | None = None) -> MulTable:
    """Build a named standard algebra; `arg` is the builder's size or profile."""
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown builder {name!r}; choose from {', '.join(sorted(BUILDERS))}")
    return builder(arg)


# ---------------------------------------------------------------------------
# Algebra files
# ---------------------------------------------------------------------------
def to_json(x: MulTable) -> str:
    """Serialize to the sparse JSON format, one table record per line."""
    lines = [
        "{",
        f'  "name": {json.dumps(x.name)},',
        f'  "dim": {x.dim},',
        '  "field": "rational",',
        '  "table": [',
    ]
    records = [
        "    " + json.dumps({"i": i, "j": j, "l": l, "c": format_scalar(v)})
        for (i, j, l), v in x.nonzero()
    ]
    if records:
        lines.append(",\n".join(records))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def _line_at(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _key_line(text: str, key: str) -> int | None:
    pos = text.find(f'"{key}"')
    return _line_at(text, pos) if pos >= 0 else None


def _record_lines(text: str) -> list:
    """Line numbers of the object records inside the "table" array."""
    start = text.find('"table"')
    if start < 0:
        return []
    lines, depth, in_string, escaped = [], 0, False, False
    for pos in range(start + len('"table"'), len(text)):
        ch = text[pos]
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
        elif ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
        elif ch == "{" and depth == 1:
            lines.append(_line_at(text, pos))
    return lines


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def from_json(text: str, source: str = "<string>") -> MulTable:
    """Parse an algebra file. Raises AlgebraFormatError naming line and field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFormatError(f"{source}: line {e.lineno}: invalid JSON: {e.msg}", line=e.lineno)
    if not isinstance(doc, dict):
        raise AlgebraFormatError(f"{source}: top level must be an object", line=1)

    for key in ("dim", "table"):
        if key not in doc:
            raise AlgebraFormatError(f"{source}: missing field {key!r}", line=None, field=key)
    n = doc["dim"]
    if not _is_int(n) or n < 1:
        raise AlgebraFormatError(f"{source}: line {_key_line(text, 'dim')}: dim must be a positive integer, got {n!r}",
                                 line=_key_line(text, "dim"), field="dim")
    field_name = doc.get("field", "rational")
    if field_name != "rational":
        raise AlgebraFormatError(f"{source}: line {_key_line(text, 'field')}: unsupported field {field_name!r}",
                                 line=_key_line(text, "field"), field="field")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise AlgebraFormatError(f"{source}: name must be a string", line=_key_line(text, "name"), field="name")
    table = doc["table"]
    if not isinstance(table, list):
        raise AlgebraFormatError(f"{source}: table must be a list",
                                 line=_key_line(text, "table"), field="table")

    record_lines = _record_lines(text)
    entries = {}
    for k, rec in enumerate(table):
        line = record_lines[k] if k < len(record_lines) else _key_line(text, "table")

        def fail(message, fld):
            raise AlgebraFormatError(f"{source}: line {line}: {message}", line=line, field=fld)

        if not isinstance(rec, dict):
            fail(f"table record {k} is not an object", "table")
        for key in ("i", "j", "l"):
            if key not in rec:
                fail(f"table record {k} lacks {key!r}", key)
        triple = ", ".join(repr(rec[key]) for key in ("i", "j", "l"))
        for key in ("i", "j", "l"):
            if not _is_int(rec[key]) or not 0 <= rec[key] < n:
                fail(f"index {key}={rec[key]!r} of entry ({triple}) out of range for dim {n}", key)
        if "c" not in rec:
            fail(f"table record {k} lacks 'c'", "c")
        if not isinstance(rec["c"], str):
            fail(f"coefficient must be a rational literal string, got {rec['c']!r}", "c")
        try:
            value = parse_scalar(rec["c"])
        except ValueError as e:
            fail(str(e), "c")
        key = (rec["i"], rec["j"], rec["l"])
        if key in entries:
            fail(f"duplicate entry for ({key[0]},{key[1]},{key[2]})", "table")
        entries[key] = value
    return MulTable.from_entries(n, entries, name)


def load(path: str) -> MulTable:
    with open(path, encoding="utf-8") as f:
        return from_json(f.read(), source=path)


def save(x: MulTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json(x))
