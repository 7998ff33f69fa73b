"""Node layouts: Halton sets, minimum-energy disk configurations, nearest
subsets, triangle evaluation points, and the serializable NodeSet container."""

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.spatial.distance import pdist

from ._validation import check_points, check_distinct

HALTON_BASES = (2, 3)


def radical_inverse(index, base):
    """Radical inverse of a positive integer: mirror its base-``base`` digits
    about the radix point."""
    if index < 1:
        raise ValueError(f"index must be >= 1, got {index}")
    result = 0.0
    scale = 1.0 / base
    i = int(index)
    while i > 0:
        i, digit = divmod(i, base)
        result += digit * scale
        scale /= base
    return result


def halton_point(index):
    """The ``index``-th point (index >= 1) of the (2, 3) Halton sequence."""
    return np.array([radical_inverse(index, b) for b in HALTON_BASES])


def halton_points(count, start=1):
    """First ``count`` Halton points from ``start`` onward, in [0, 1)^2."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return np.array([halton_point(i) for i in range(start, start + count)])


def halton_disk_nodes(count, radius):
    """First ``count`` Halton points that land inside the disk of ``radius``.

    The unit square maps affinely onto the disk's bounding square; points
    falling outside the disk are skipped and the sequence continues until
    ``count`` are accepted.  Fully deterministic.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    radius = float(radius)
    accepted = []
    index = 1
    while len(accepted) < count:
        p = (2.0 * halton_point(index) - 1.0) * radius
        if p[0] * p[0] + p[1] * p[1] <= radius * radius:
            accepted.append(p)
        index += 1
    return np.array(accepted)


def riesz_energy(points):
    """Coulomb (Riesz s=1) energy sum_{i<j} 1/||x_i - x_j||."""
    return float(np.sum(1.0 / pdist(points)))


def _riesz_forces(points):
    diffs = points[:, np.newaxis, :] - points[np.newaxis, :, :]
    r2 = np.sum(diffs * diffs, axis=-1)
    np.fill_diagonal(r2, np.inf)
    inv_r3 = r2**-1.5
    return np.sum(diffs * inv_r3[:, :, np.newaxis], axis=1)


def _project_disk(points, radius):
    norms = np.sqrt(np.sum(points * points, axis=-1))
    factor = np.where(norms > radius, radius / np.where(norms == 0, 1.0, norms), 1.0)
    return points * factor[:, np.newaxis]


def _feasible_forces(points, forces, radius):
    """Drop the outward radial force component at points pinned on the rim.

    The disk projection cancels that component anyway; removing it first
    lets the step length track the forces that can still do work, so the
    descent does not stall while boundary points slide along the circle.
    """
    norms = np.sqrt(np.sum(points * points, axis=-1))
    safe = np.where(norms == 0, 1.0, norms)
    radial = np.sum(forces * points, axis=-1) / safe
    pinned_out = (norms >= radius * (1.0 - 1e-9)) & (radial > 0)
    trim = np.where(pinned_out, radial, 0.0) / safe
    return forces - trim[:, np.newaxis] * points


@dataclass
class MinEnergyResult:
    points: np.ndarray
    converged: bool
    iterations: int
    energy: float


def _descend(points, radius, spacing, tol, max_iter):
    """Monotone projected descent on the Riesz energy.

    Step lengths come from the Barzilai-Borwein secant estimate, halved by
    a backtracking search whenever a trial would raise the energy, so the
    energy never increases.  Converged means the largest per-sweep
    displacement fell below ``tol``.
    """
    energy = riesz_energy(points)
    alpha = None
    prev_points = None
    prev_grad = None
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        forces = _feasible_forces(points, _riesz_forces(points), radius)
        fmax = float(np.max(np.sqrt(np.sum(forces * forces, axis=-1))))
        if fmax == 0.0:
            converged = True
            break
        grad = -forces
        if prev_points is None:
            alpha = 0.05 * spacing / fmax
        else:
            dx = (points - prev_points).ravel()
            dg = (grad - prev_grad).ravel()
            curvature = float(dx @ dg)
            if curvature > 0:
                alpha = float(dx @ dx) / curvature
        # never let one sweep move a point more than the target spacing
        step = min(alpha, spacing / fmax)
        prev_points, prev_grad = points, grad
        trial = None
        for _ in range(60):
            trial = _project_disk(points + step * forces, radius)
            trial_energy = riesz_energy(trial)
            if trial_energy <= energy:
                break
            step *= 0.5
        else:
            # No descent possible at any step length: already at a minimum.
            converged = True
            break
        displacement = float(np.max(np.sqrt(np.sum((trial - points) ** 2, axis=-1))))
        points, energy = trial, trial_energy
        alpha = step
        if displacement < tol:
            converged = True
            break
    return points, energy, converged, iterations


_N_STARTS = 8
_SCREEN_ITER = 300


def min_energy_disk_nodes(count, radius, seed=1, max_iter=5000):
    """Quasi-uniform points in a disk from projected Riesz-energy descent.

    Draws several uniform samples from the seeded generator, runs a short
    descent on each, and polishes the lowest-energy candidate; plain
    single-start descent tends to lock in a poor boundary/interior split
    that no amount of further iteration can fix.  Stops when the largest
    per-sweep displacement drops below 1e-8 * radius, or after ``max_iter``
    polish sweeps (flagged in the result).  Output is sorted by distance
    from the origin.
    """
    if count < 3:
        raise ValueError(f"count must be >= 3, got {count}")
    radius = float(radius)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")

    rng = np.random.default_rng(seed)
    spacing = 2.0 * radius / np.sqrt(count)
    tol = 1e-8 * radius
    best = None
    best_energy = np.inf
    for _ in range(_N_STARTS):
        rad = radius * np.sqrt(rng.random(count))
        theta = 2.0 * np.pi * rng.random(count)
        start = np.column_stack([rad * np.cos(theta), rad * np.sin(theta)])
        screened, energy, _, _ = _descend(start, radius, spacing, tol, _SCREEN_ITER)
        if energy < best_energy:
            best, best_energy = screened, energy
    points, energy, converged, iterations = _descend(
        best, radius, spacing, tol, max_iter
    )

    order = np.lexsort(
        (points[:, 1], points[:, 0], np.sqrt(np.sum(points * points, axis=-1)))
    )
    return MinEnergyResult(points[order], converged, iterations, energy)


def k_nearest(points, anchor, k):
    """The ``k`` points nearest to ``anchor``, ascending by distance.

    Distance ties are broken by lexicographic (x, y) order so subsets are
    deterministic.
    """
    points = check_points(points, "points")
    anchor = np.asarray(anchor, dtype=float)
    if k < 1 or k > len(points):
        raise ValueError(f"k must be in [1, {len(points)}], got {k}")
    d = np.sqrt(np.sum((points - anchor) ** 2, axis=-1))
    order = np.lexsort((points[:, 1], points[:, 0], d))
    return points[order[:k]]


def triangle_interior_nodes(vertices, count):
    """``count`` strictly interior points of a triangle, Halton-distributed.

    The (2, 3) Halton pairs (u, v) map through the square-root barycentric
    transform (1 - sqrt(u), sqrt(u)(1 - v), sqrt(u) v), which is uniform
    over the triangle's area and deterministic.
    """
    vertices = check_points(vertices, "vertices")
    if vertices.shape != (3, 2):
        raise ValueError(f"expected 3 vertices, got shape {vertices.shape}")
    a, b, c = vertices
    area2 = abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    if area2 == 0.0:
        raise ValueError("triangle is degenerate (zero area)")
    uv = halton_points(count)
    su = np.sqrt(uv[:, 0])
    bary = np.column_stack([1.0 - su, su * (1.0 - uv[:, 1]), su * uv[:, 1]])
    return bary @ vertices


@dataclass
class NodeSet:
    """Data nodes plus error-evaluation nodes inside a disk of given radius.

    ``avg_spacing`` is the mean nearest-neighbor distance among the data
    nodes, recomputed on access so it always matches the current layout.
    """

    data_nodes: np.ndarray
    eval_nodes: np.ndarray
    radius: float
    seed: int = 1
    kind: str = "disk"
    converged: bool = field(default=True, compare=False)

    def __post_init__(self):
        self.data_nodes = check_points(self.data_nodes, "data_nodes")
        self.eval_nodes = check_points(self.eval_nodes, "eval_nodes")
        self.radius = float(self.radius)
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        norms = np.sqrt(np.sum(self.data_nodes**2, axis=-1))
        if np.any(norms > self.radius * (1.0 + 1e-9)):
            raise ValueError("data nodes must lie within the region radius")
        check_distinct(self.data_nodes, "data_nodes")

    @property
    def n_data(self):
        return len(self.data_nodes)

    @property
    def n_eval(self):
        return len(self.eval_nodes)

    @property
    def avg_spacing(self):
        diffs = self.data_nodes[:, np.newaxis, :] - self.data_nodes[np.newaxis, :, :]
        dist = np.sqrt(np.sum(diffs * diffs, axis=-1))
        np.fill_diagonal(dist, np.inf)
        return float(np.mean(dist.min(axis=1)))

    def scaled(self, new_radius):
        """Uniformly rescale every node so the region radius becomes
        ``new_radius``; pairwise distance ratios are preserved exactly."""
        new_radius = float(new_radius)
        if new_radius <= 0:
            raise ValueError(f"radius must be positive, got {new_radius}")
        factor = new_radius / self.radius
        return replace(
            self,
            data_nodes=self.data_nodes * factor,
            eval_nodes=self.eval_nodes * factor,
            radius=new_radius,
        )

    def save(self, path):
        """Write the set as CSV: a ``# kind,radius,seed,count`` header line,
        then ``x,y,role`` rows.  Coordinates use 17 significant digits so a
        load reproduces them bit for bit."""
        with open(path, "w", newline="") as fh:
            count = self.n_data + self.n_eval
            fh.write(f"# {self.kind},{self.radius:.17g},{self.seed},{count}\n")
            for x, y in self.data_nodes:
                fh.write(f"{x:.17g},{y:.17g},data\n")
            for x, y in self.eval_nodes:
                fh.write(f"{x:.17g},{y:.17g},eval\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            header = fh.readline().strip()
            if not header.startswith("#"):
                raise ValueError(f"{path}: missing '# kind,radius,seed,count' header")
            parts = header.lstrip("#").strip().split(",")
            if len(parts) != 4:
                raise ValueError(f"{path}: malformed header {header!r}")
            kind = parts[0]
            radius = float(parts[1])
            seed = int(parts[2])
            count = int(parts[3])
            data, evals = [], []
            for lineno, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                fields = line.split(",")
                if len(fields) != 3 or fields[2] not in ("data", "eval"):
                    raise ValueError(f"{path}:{lineno}: malformed row {line!r}")
                target = data if fields[2] == "data" else evals
                target.append((float(fields[0]), float(fields[1])))
        if len(data) + len(evals) != count:
            raise ValueError(
                f"{path}: header count {count} != {len(data) + len(evals)} rows"
            )
        return cls(
            data_nodes=np.array(data),
            eval_nodes=np.array(evals),
            radius=radius,
            seed=seed,
            kind=kind,
        )


def disk_node_set(n_data=56, n_eval=60, radius=0.1, seed=1, eval_fraction=1.0 / 3.0):
    """Minimum-energy data nodes in a disk with Halton evaluation nodes
    clustered in the concentric disk of ``eval_fraction * radius``."""
    result = min_energy_disk_nodes(n_data, radius, seed=seed)
    eval_nodes = halton_disk_nodes(n_eval, radius * eval_fraction)
    return NodeSet(
        data_nodes=result.points,
        eval_nodes=eval_nodes,
        radius=radius,
        seed=seed,
        kind="disk",
        converged=result.converged,
    )


def cost_node_set(n_data=104, n_eval=249, radius=1.0, seed=1):
    """Minimum-energy data nodes with evaluation nodes inside the triangle
    of the three data nodes closest to the origin."""
    result = min_energy_disk_nodes(n_data, radius, seed=seed)
    triangle = k_nearest(result.points, np.zeros(2), 3)
    eval_nodes = triangle_interior_nodes(triangle, n_eval)
    return NodeSet(
        data_nodes=result.points,
        eval_nodes=eval_nodes,
        radius=radius,
        seed=seed,
        kind="cost",
        converged=result.converged,
    )
