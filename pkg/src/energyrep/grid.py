"""Discretized flat manifolds: grids, fields, quadrature and covariant derivatives.

Supported domains are the circle (arclength coordinates), the torus, and
truncated boxes (interval, square) with zero extension outside.  All shipped
metrics are conformally flat, metric = scale(x) * identity, so the Levi-Civita
connection is coordinate trivial and the covariant derivative reduces to
componentwise finite differences.
"""
from __future__ import annotations

import csv
import dataclasses
import itertools
from dataclasses import dataclass

import numpy as np

SUPPORTED_SHAPES = ("circle", "interval", "torus", "square", "punctured_square")

# -B on the su(2) basis used throughout is 2 * identity, so every algebra
# contraction in an inner product carries this factor.
ALGEBRA_METRIC_FACTOR = 2.0


class GridError(ValueError):
    """Invalid grid construction or mismatched grid operands."""


@dataclass(frozen=True, eq=False)
class GridManifold:
    """A uniform tensor grid with measure weights and a conformal metric scale."""

    dimension: int
    shape_name: str
    topology: str  # "periodic" | "truncated"
    axis_sizes: tuple
    spacing: np.ndarray       # (d,)
    nodes: np.ndarray         # (n, d)
    metric_scale: np.ndarray  # (n,), metric = scale * identity at each node
    condition_c_ok: bool = True

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]

    def measure_weights(self) -> np.ndarray:
        """Quadrature weight per node, sqrt|g| * prod(h)."""
        cell = float(np.prod(self.spacing))
        return cell * self.metric_scale ** (self.dimension / 2.0)

    def has_unit_scale(self) -> bool:
        return bool(np.all(self.metric_scale == 1.0))

    def constant_scale(self) -> float:
        s = self.metric_scale
        if not np.all(s == s[0]):
            raise GridError("operation requires a constant metric scale")
        return float(s[0])

    def to_mesh(self, values: np.ndarray) -> np.ndarray:
        comp = values.shape[1:]
        return values.reshape(self.axis_sizes + comp)

    def from_mesh(self, mesh: np.ndarray) -> np.ndarray:
        comp = mesh.shape[self.dimension:]
        return mesh.reshape((self.node_count,) + comp)

    def compatible_with(self, other: "GridManifold") -> bool:
        return (
            self.shape_name == other.shape_name
            and self.axis_sizes == other.axis_sizes
            and self.topology == other.topology
            and np.array_equal(self.spacing, other.spacing)
        )


def build_grid(shape: str, nodes: int, radius: float | None = None,
               halfwidth: float | None = None) -> GridManifold:
    """Build one of the supported uniform grids.

    ``nodes`` counts grid points per axis.  Periodic shapes take ``radius``
    (circumference 2*pi*radius per axis), truncated shapes take ``halfwidth``
    (domain [-L, L] per axis, cell centered nodes, zero extension outside).
    """
    if shape not in SUPPORTED_SHAPES:
        raise GridError(f"unsupported shape {shape!r}; choose from {SUPPORTED_SHAPES}")
    if nodes < 4:
        raise GridError("need at least 4 nodes per axis")

    if shape in ("circle", "torus"):
        r = 1.0 if radius is None else float(radius)
        if r <= 0:
            raise GridError("radius must be positive")
        d = 1 if shape == "circle" else 2
        h = 2.0 * np.pi * r / nodes
        axis = h * np.arange(nodes)
        topology = "periodic"
    else:
        if halfwidth is None or halfwidth <= 0:
            raise GridError("truncated shapes need a positive halfwidth")
        L = float(halfwidth)
        d = 1 if shape == "interval" else 2
        h = 2.0 * L / nodes
        axis = -L + h * (np.arange(nodes) + 0.5)
        topology = "truncated"

    if d == 1:
        coords = axis[:, None]
    else:
        xg, yg = np.meshgrid(axis, axis, indexing="ij")
        coords = np.stack([xg.reshape(-1), yg.reshape(-1)], axis=1)

    return GridManifold(
        dimension=d,
        shape_name=shape,
        topology=topology,
        axis_sizes=(nodes,) * d,
        spacing=np.full(d, h),
        nodes=coords,
        metric_scale=np.ones(coords.shape[0]),
        condition_c_ok=(shape != "punctured_square"),
    )


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Field:
    """A tensor field on a grid.

    values has shape (n,) + (d,)*rank, with a trailing (3,) axis when the
    field carries complexified su(2) coefficients (algebra=True).
    """

    grid: GridManifold
    rank: int
    values: np.ndarray
    algebra: bool = False

    def __post_init__(self):
        expected = (self.grid.node_count,) + (self.grid.dimension,) * self.rank
        if self.algebra:
            expected = expected + (3,)
        if self.values.shape != expected:
            raise GridError(
                f"field values have shape {self.values.shape}, expected {expected}")

    @classmethod
    def scalar(cls, grid: GridManifold, values: np.ndarray) -> "Field":
        return cls(grid, 0, np.asarray(values))

    @classmethod
    def covector(cls, grid: GridManifold, values: np.ndarray,
                 algebra: bool = False) -> "Field":
        return cls(grid, 1, np.asarray(values), algebra)

    @classmethod
    def zero(cls, grid: GridManifold, rank: int = 0, algebra: bool = False) -> "Field":
        shape = (grid.node_count,) + (grid.dimension,) * rank
        if algebra:
            shape = shape + (3,)
        return cls(grid, rank, np.zeros(shape, dtype=complex), algebra)

    def copy_with(self, values: np.ndarray) -> "Field":
        return Field(self.grid, self.rank, values, self.algebra)

    def scale_by_nodes(self, factor: np.ndarray) -> "Field":
        """Multiply by a per-node scalar (broadcast over component axes)."""
        extra = self.values.ndim - 1
        shaped = np.asarray(factor).reshape((-1,) + (1,) * extra)
        return self.copy_with(self.values * shaped)

    def __add__(self, other: "Field") -> "Field":
        _check_pair(self, other)
        return self.copy_with(self.values + other.values)

    def __sub__(self, other: "Field") -> "Field":
        _check_pair(self, other)
        return self.copy_with(self.values - other.values)

    def __mul__(self, scalar) -> "Field":
        return self.copy_with(self.values * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class WeightField:
    """The potential W (>= 1 everywhere) together with a weight exponent rho."""

    grid: GridManifold
    w: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        if self.w.shape != (self.grid.node_count,):
            raise GridError("W must be a per-node scalar array")
        if self.rho.shape != (self.grid.node_count,):
            raise GridError("rho must be a per-node scalar array")
        if np.min(self.w) < 1.0:
            raise GridError("potential W must satisfy W >= 1 everywhere")

    @classmethod
    def constant(cls, grid: GridManifold, value: float = 2.0,
                 rho: np.ndarray | None = None) -> "WeightField":
        r = np.zeros(grid.node_count) if rho is None else np.asarray(rho, float)
        return cls(grid, np.full(grid.node_count, float(value)), r)

    @classmethod
    def quadratic(cls, grid: GridManifold, offset: float = 1.0,
                  rho: np.ndarray | None = None) -> "WeightField":
        w = np.sum(grid.nodes ** 2, axis=1) + float(offset)
        r = np.zeros(grid.node_count) if rho is None else np.asarray(rho, float)
        return cls(grid, w, r)


def _check_pair(f: Field, g: Field) -> None:
    if not f.grid.compatible_with(g.grid):
        raise GridError("fields live on different grids")
    if f.rank != g.rank or f.algebra != g.algebra:
        raise GridError("fields have mismatched rank or algebra structure")


# ---------------------------------------------------------------------------
# Quadrature inner products
# ---------------------------------------------------------------------------

def inner_product(f: Field, g: Field, rho: np.ndarray | None = None) -> complex:
    """<f, g>_{rho,0}: quadrature sum of the pointwise inner product.

    Antilinear in the left argument.  Covector indices contract with the
    inverse metric (scale^-rank), algebra indices with -B (2 * identity).
    """
    _check_pair(f, g)
    grid = f.grid
    if not np.allclose(f.grid.metric_scale, g.grid.metric_scale):
        raise GridError("fields live on different conformal rescalings")
    axes = tuple(range(1, f.values.ndim))
    pointwise = np.sum(np.conj(f.values) * g.values, axis=axes)
    if f.algebra:
        pointwise = pointwise * ALGEBRA_METRIC_FACTOR
    weight = grid.measure_weights() * grid.metric_scale ** (-f.rank)
    if rho is not None:
        weight = weight * np.exp(np.asarray(rho, float))
    return complex(np.sum(pointwise * weight))


def norm(f: Field, rho: np.ndarray | None = None) -> float:
    val = inner_product(f, f, rho).real
    return float(np.sqrt(max(val, 0.0)))


def conformal_rescale(grid: GridManifold, rho: np.ndarray):
    """Rescale the metric by e^rho per the conformal transformation rules.

    Returns (new grid, combined per-node factor on <f,g>_0 for covector
    fields), the factor being e^{(d/2 - 1) rho}.
    """
    rho = np.asarray(rho, float)
    if rho.shape != (grid.node_count,):
        raise GridError("rho must be a per-node scalar array")
    new_grid = dataclasses.replace(grid, metric_scale=grid.metric_scale * np.exp(rho))
    combined = np.exp((grid.dimension / 2.0 - 1.0) * rho)
    return new_grid, combined


def rebind(field: Field, grid: GridManifold) -> Field:
    """Carry a field's raw components onto a conformally rescaled copy of its grid."""
    if field.grid.axis_sizes != grid.axis_sizes or field.grid.topology != grid.topology:
        raise GridError("cannot rebind field to an unrelated grid")
    return Field(grid, field.rank, field.values, field.algebra)


# ---------------------------------------------------------------------------
# Covariant derivative (centered, second order) and its exact adjoint
# ---------------------------------------------------------------------------

def _shifted(mesh: np.ndarray, axis: int, step: int, topology: str) -> np.ndarray:
    """Values at x + step*h along one axis; zero extension if truncated."""
    if topology == "periodic":
        return np.roll(mesh, -step, axis=axis)
    out = np.zeros_like(mesh)
    src = [slice(None)] * mesh.ndim
    dst = [slice(None)] * mesh.ndim
    if step > 0:
        src[axis] = slice(step, None)
        dst[axis] = slice(None, -step)
    else:
        src[axis] = slice(None, step)
        dst[axis] = slice(-step, None)
    out[tuple(dst)] = mesh[tuple(src)]
    return out


def _axis_derivative(grid: GridManifold, values: np.ndarray, axis: int) -> np.ndarray:
    mesh = grid.to_mesh(values)
    h = grid.spacing[axis]
    dmesh = (_shifted(mesh, axis, +1, grid.topology)
             - _shifted(mesh, axis, -1, grid.topology)) / (2.0 * h)
    return grid.from_mesh(dmesh)


def covariant_derivative(f: Field) -> Field:
    """Centered-difference covariant derivative, rank k -> k+1.

    The new covector index sits right after the node axis.  Requires a
    constant metric scale (flat connection); O(h^2) on smooth fields.
    """
    grid = f.grid
    grid.constant_scale()
    parts = [_axis_derivative(grid, f.values, j) for j in range(grid.dimension)]
    values = np.stack(parts, axis=1)
    return Field(grid, f.rank + 1, values, f.algebra)


def covariant_derivative_adjoint(f: Field) -> Field:
    """Exact adjoint of covariant_derivative under the quadrature inner product."""
    grid = f.grid
    c = grid.constant_scale()
    if f.rank < 1:
        raise GridError("adjoint derivative needs rank >= 1")
    acc = None
    for j in range(grid.dimension):
        term = _axis_derivative(grid, f.values[:, j], j)
        acc = term if acc is None else acc + term
    # centered differences are skew under uniform weights; the constant scale
    # contributes one inverse-metric factor on the removed index
    return Field(grid, f.rank - 1, -acc / c, f.algebra)


def iterated_derivative(f: Field, order: int) -> Field:
    out = f
    for _ in range(order):
        out = covariant_derivative(out)
    return out


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

def field_to_csv(f: Field, path) -> None:
    """Write node coordinates plus every component (re, im) as CSV."""
    import pathlib
    pathlib.Path(path).parent.mkdir(parents=True, exist_ok=True)
    grid = f.grid
    comp_shape = f.values.shape[1:]
    comp_indices = list(itertools.product(*[range(s) for s in comp_shape]))
    header = [f"x{j}" for j in range(grid.dimension)]
    for idx in comp_indices:
        tag = "c" + "_".join(str(i) for i in idx) if idx else "c"
        header += [f"{tag}_re", f"{tag}_im"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for x in range(grid.node_count):
            row = [repr(float(v)) for v in grid.nodes[x]]
            for idx in comp_indices:
                v = complex(f.values[(x,) + idx])
                row += [repr(v.real), repr(v.imag)]
            writer.writerow(row)
