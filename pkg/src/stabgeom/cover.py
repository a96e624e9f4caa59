"""Ball-cover counting and Assouad dimension estimation.

covering_number answers: how many radius-r balls are needed to cover a
given radius-R ball?  Cover centers may be ANY vertex of the graph (the
covering definition does not restrict them, and extra candidates can only
reduce the count).  Small targets (<= 64 vertices) are solved exactly by
branch-and-bound set cover on bitmasks; larger ones fall back to the
greedy bound with the gap flagged.

assouad_fit produces an upper-envelope estimate (beta_hat, C_hat) over a
schedule of (R, r) pairs: worst-case covering numbers over centers, then
the smallest exponent that keeps the required constant from growing with
scale.  The fit is an envelope, never least squares: every sampled pair
satisfies N <= C_hat * (R/r)^beta_hat by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import ConnectivityGraph

EXACT_COVER_LIMIT = 64  # exact set cover required up to this target size
BETA_GRID_STEP = 0.01
CENTER_SAMPLE_LIMIT = 512  # above this, centers are sampled by a fixed stride


class InvalidScalesError(ValueError):
    """Radius pair violates 0 < r < R."""


class InsufficientDataError(ValueError):
    """Fewer than 3 scale pairs supplied to the fit."""


@dataclass
class CoverInstance:
    """One solved cover: radius-r balls whose union contains ball(center, R)."""

    center: int
    outer_radius: float
    inner_radius: float
    cover_centers: list[int]
    exact: bool
    target_size: int

    @property
    def count(self) -> int:
        return len(self.cover_centers)

    def validate(self, g: ConnectivityGraph) -> bool:
        target = g.ball(self.center, self.outer_radius)
        covered = set()
        for c in self.cover_centers:
            covered |= g.ball(c, self.inner_radius)
        return target <= covered


def _candidate_masks(g: ConnectivityGraph, target: Sequence[int], r) -> list[int]:
    """Deduplicated, dominance-pruned bitmasks of ball(v, r) & target over all v."""
    index = {v: i for i, v in enumerate(target)}
    masks = set()
    for v in range(g.vertex_count):
        mask = 0
        for w in g.ball(v, r):
            pos = index.get(w)
            if pos is not None:
                mask |= 1 << pos
        if mask:
            masks.add(mask)
    # drop masks contained in another mask
    ordered = sorted(masks, key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in ordered:
        if not any((m | k) == k for k in kept):
            kept.append(m)
    return kept


def _greedy_cover(universe: int, masks: Sequence[int]) -> list[int]:
    """Indices of a greedy cover; deterministic (largest gain, lowest index)."""
    chosen = []
    covered = 0
    while covered != universe:
        best_idx = -1
        best_gain = 0
        for i, m in enumerate(masks):
            gain = (m & ~covered).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_idx = i
        if best_idx < 0:
            raise RuntimeError("universe not coverable by candidate balls")
        chosen.append(best_idx)
        covered |= masks[best_idx]
    return chosen


def _exact_cover(universe: int, masks: Sequence[int]) -> list[int]:
    """Minimum cover of the universe as mask indices (branch and bound)."""
    best = _greedy_cover(universe, masks)

    def dfs(covered: int, chosen: list[int]) -> None:
        nonlocal best
        if covered == universe:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + 1 >= len(best):
            return
        remaining = (universe & ~covered).bit_count()
        gain = max((m & ~covered).bit_count() for m in masks)
        if len(chosen) + math.ceil(remaining / gain) >= len(best):
            return
        # branch on the uncovered element hit by the fewest candidates
        rem = universe & ~covered
        best_elem, best_freq = -1, None
        r = rem
        while r:
            low = r & -r
            elem = low.bit_length() - 1
            freq = sum(1 for m in masks if (m >> elem) & 1)
            if best_freq is None or freq < best_freq:
                best_freq, best_elem = freq, elem
                if freq == 1:
                    break
            r &= r - 1
        covering = [i for i, m in enumerate(masks) if (m >> best_elem) & 1]
        covering.sort(key=lambda i: -(masks[i] & ~covered).bit_count())
        for i in covering:
            chosen.append(i)
            dfs(covered | masks[i], chosen)
            chosen.pop()

    dfs(0, [])
    return best


def covering_solution(
    g: ConnectivityGraph, center: int, outer_radius, inner_radius, mode: str = "auto"
) -> CoverInstance:
    """Cover ball(center, R) by radius-r balls; exact below EXACT_COVER_LIMIT.

    mode: "exact" forces branch-and-bound, "greedy" forces the greedy upper
    bound, "auto" picks exact iff the target has at most EXACT_COVER_LIMIT
    vertices.
    """
    if not (0 < inner_radius < outer_radius):
        raise InvalidScalesError(f"need 0 < r < R, got r={inner_radius}, R={outer_radius}")
    if mode not in ("auto", "exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    target = sorted(g.ball(center, outer_radius))
    universe = (1 << len(target)) - 1
    masks = _candidate_masks(g, target, inner_radius)
    exact = mode == "exact" or (mode == "auto" and len(target) <= EXACT_COVER_LIMIT)
    chosen = _exact_cover(universe, masks) if exact else _greedy_cover(universe, masks)
    centers = _mask_centers(g, target, inner_radius, chosen, masks)
    return CoverInstance(
        center=center,
        outer_radius=outer_radius,
        inner_radius=inner_radius,
        cover_centers=centers,
        exact=exact,
        target_size=len(target),
    )


def _mask_centers(g, target, r, chosen, masks) -> list[int]:
    """Map chosen candidate masks back to some ball center realizing each mask."""
    index = {v: i for i, v in enumerate(target)}
    out = []
    for idx in chosen:
        want = masks[idx]
        for v in range(g.vertex_count):
            mask = 0
            for w in g.ball(v, r):
                pos = index.get(w)
                if pos is not None:
                    mask |= 1 << pos
            if mask == want:
                out.append(v)
                break
    return out


def covering_number(
    g: ConnectivityGraph, center: int, outer_radius, inner_radius, mode: str = "auto"
) -> int:
    """Number of radius-r balls needed to cover ball(center, R)."""
    if not (0 < inner_radius < outer_radius):
        raise InvalidScalesError(f"need 0 < r < R, got r={inner_radius}, R={outer_radius}")
    if mode not in ("auto", "exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    target = sorted(g.ball(center, outer_radius))
    universe = (1 << len(target)) - 1
    masks = _candidate_masks(g, target, inner_radius)
    exact = mode == "exact" or (mode == "auto" and len(target) <= EXACT_COVER_LIMIT)
    if exact:
        return len(_exact_cover(universe, masks))
    return len(_greedy_cover(universe, masks))


@dataclass
class AssouadEstimate:
    """Envelope fit N(R, r) <= C_hat * (R/r)^beta_hat over sampled scales."""

    beta_hat: float
    c_hat: float
    scale_range: list[tuple[float, float]]
    per_pair_counts: list[int]
    residual: float
    centers_sampled: int
    center_stride: int
    exact_pairs: list[bool] = field(default_factory=list)

    def predicted(self, outer_radius: float, inner_radius: float) -> float:
        return self.c_hat * (outer_radius / inner_radius) ** self.beta_hat

    def covers_scale(self, outer_radius: float, inner_radius: float, count: int) -> bool:
        """Whether the fitted envelope upper-bounds `count` at this scale pair."""
        return count <= self.predicted(outer_radius, inner_radius) * (1 + 1e-12)

    def as_dict(self) -> dict:
        return {
            "beta_hat": round(self.beta_hat, 6),
            "c_hat": round(self.c_hat, 6),
            "scale_range": [[float(r_outer), float(r_inner)] for r_outer, r_inner in self.scale_range],
            "per_pair_counts": list(self.per_pair_counts),
            "residual": round(self.residual, 6),
            "centers_sampled": self.centers_sampled,
            "center_stride": self.center_stride,
            "exact_pairs": list(self.exact_pairs),
        }


def _sample_centers(n: int) -> tuple[list[int], int]:
    if n <= CENTER_SAMPLE_LIMIT:
        return list(range(n)), 1
    stride = math.ceil(n / CENTER_SAMPLE_LIMIT)
    return list(range(0, n, stride)), stride


def worst_case_covering_number(
    g: ConnectivityGraph, outer_radius, inner_radius, centers: Optional[Sequence[int]] = None
) -> tuple[int, bool]:
    """Max covering number over centers; returns (count, all_exact).

    Only set-maximal target balls are solved: covering a subset never needs
    more balls than covering a superset.
    """
    if centers is None:
        centers, _ = _sample_centers(g.vertex_count)
    balls = {}
    for v in centers:
        balls[v] = g.ball(v, outer_radius)
    maximal = []
    for v, ball in balls.items():
        if not any(ball < other for other in balls.values()):
            maximal.append(v)
    seen: set[frozenset] = set()
    best = 0
    all_exact = True
    for v in maximal:
        if balls[v] in seen:
            continue
        seen.add(balls[v])
        target_size = len(balls[v])
        exact = target_size <= EXACT_COVER_LIMIT
        count = covering_number(
            g, v, outer_radius, inner_radius, mode="exact" if exact else "greedy"
        )
        all_exact = all_exact and exact
        best = max(best, count)
    return best, all_exact


def assouad_fit(
    g: ConnectivityGraph,
    r_max: float,
    radii_schedule: Sequence[tuple[float, float]],
) -> AssouadEstimate:
    """Fit the minimal upper envelope over worst-case covering numbers.

    beta_hat is the smallest multiple of 0.01 at least as large as every
    pairwise slope of log N against log(R/r) (the smallest exponent for
    which the required constant does not grow with scale); C_hat is then
    the smallest constant >= 1 making the envelope hold on every pair.
    """
    pairs = [(float(rr), float(r)) for rr, r in radii_schedule]
    if len(pairs) < 3:
        raise InsufficientDataError("assouad_fit needs at least 3 (R, r) pairs")
    for outer_radius, inner_radius in pairs:
        if not (0 < inner_radius < outer_radius):
            raise InvalidScalesError(f"need 0 < r < R, got ({outer_radius}, {inner_radius})")
        if outer_radius > r_max:
            raise InvalidScalesError(f"R={outer_radius} exceeds R_max={r_max}")
    centers, stride = _sample_centers(g.vertex_count)
    counts = []
    exact_flags = []
    for outer_radius, inner_radius in pairs:
        count, exact = worst_case_covering_number(g, outer_radius, inner_radius, centers)
        counts.append(count)
        exact_flags.append(exact)
    points = [
        (math.log(outer_radius / inner_radius), math.log(max(count, 1)))
        for (outer_radius, inner_radius), count in zip(pairs, counts)
    ]
    slope = 0.0
    for i in range(len(points)):
        for j in range(len(points)):
            if points[j][0] > points[i][0] + 1e-12:
                s = (points[j][1] - points[i][1]) / (points[j][0] - points[i][0])
                slope = max(slope, s)
    beta_hat = math.ceil(slope / BETA_GRID_STEP - 1e-9) * BETA_GRID_STEP
    beta_hat = max(0.0, beta_hat)
    c_hat = 1.0
    for (outer_radius, inner_radius), count in zip(pairs, counts):
        c_hat = max(c_hat, count / (outer_radius / inner_radius) ** beta_hat)
    residual = max(
        count / (c_hat * (outer_radius / inner_radius) ** beta_hat)
        for (outer_radius, inner_radius), count in zip(pairs, counts)
    )
    estimate = AssouadEstimate(
        beta_hat=beta_hat,
        c_hat=c_hat,
        scale_range=pairs,
        per_pair_counts=counts,
        residual=residual,
        centers_sampled=len(centers),
        center_stride=stride,
        exact_pairs=exact_flags,
    )
    assert estimate.residual <= 1 + 1e-9, "envelope property violated by construction"
    return estimate


def default_schedule(r_max: float = 8.0, extra: Sequence[tuple[float, float]] = ()) -> list[tuple[float, float]]:
    """Deterministic scale schedule: integer pairs plus half-radius anchors.

    The (R, 1/2) pairs tie the envelope to raw ball sizes (a radius-1/2
    ball is a single vertex), which is what the distance-bound formula
    consumes.
    """
    base = [(2.0, 0.5), (4.0, 0.5), (2.0, 1.0), (4.0, 1.0), (4.0, 2.0), (6.0, 2.0), (8.0, 2.0), (8.0, 4.0)]
    pairs = {p for p in base if p[0] <= r_max}
    for p in extra:
        if 0 < p[1] < p[0] <= r_max:
            pairs.add((float(p[0]), float(p[1])))
    return sorted(pairs)
