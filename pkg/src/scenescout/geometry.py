"""Oriented boxes, camera poses, and vectorized ray/box intersection.

All lengths are meters, all angles radians. Boxes are oriented only about
the vertical axis (yaw); that is enough for furniture-scale scenes and keeps
ray casting a pure slab test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Pose2D:
    """Robot base pose on the floor plane."""

    x: float
    y: float
    yaw: float

    def xy(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


@dataclass(frozen=True)
class CameraPose:
    """6-DoF camera pose; roll is carried but stays 0 in practice."""

    x: float
    y: float
    z: float
    yaw: float
    pitch: float
    roll: float = 0.0

    @property
    def origin(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Forward / right / up unit vectors (right-handed, z up)."""
        cy, sy = math.cos(self.yaw), math.sin(self.yaw)
        cp, sp = math.cos(self.pitch), math.sin(self.pitch)
        fwd = np.array([cp * cy, cp * sy, sp])
        right = np.array([sy, -cy, 0.0])
        up = np.cross(right, fwd)
        return fwd, right, up

    def as_list(self) -> list[float]:
        return [self.x, self.y, self.z, self.yaw, self.pitch, self.roll]


def yaw_matrix(yaw: float) -> np.ndarray:
    c, s = math.cos(yaw), math.sin(yaw)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class OrientedBox:
    """Box with center, size (full extents along local axes) and yaw.

    Local +x is the box "facing" direction (container openings face +x).
    """

    center: tuple[float, float, float]
    size: tuple[float, float, float]
    yaw: float = 0.0

    @property
    def center_np(self) -> np.ndarray:
        return np.asarray(self.center, dtype=float)

    @property
    def half(self) -> np.ndarray:
        return np.asarray(self.size, dtype=float) / 2.0

    def rotation(self) -> np.ndarray:
        return yaw_matrix(self.yaw)

    def translated(self, offset: np.ndarray) -> "OrientedBox":
        c = self.center_np + np.asarray(offset, dtype=float)
        return OrientedBox(tuple(c), self.size, self.yaw)

    def to_local(self, points: np.ndarray) -> np.ndarray:
        return (np.atleast_2d(points) - self.center_np) @ self.rotation()

    def to_world(self, local: np.ndarray) -> np.ndarray:
        return np.atleast_2d(local) @ self.rotation().T + self.center_np

    def contains(self, points: np.ndarray, margin: float = 0.0) -> np.ndarray:
        local = self.to_local(points)
        return np.all(np.abs(local) <= self.half + margin, axis=1)

    def corners(self) -> np.ndarray:
        """All 8 corners in world frame."""
        h = self.half
        signs = np.array(
            [[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)],
            dtype=float,
        )
        return self.to_world(signs * h)

    def footprint_bounds(self) -> tuple[float, float, float, float]:
        """Axis-aligned xy bounds of the rotated footprint."""
        c = self.corners()
        return float(c[:, 0].min()), float(c[:, 1].min()), float(c[:, 0].max()), float(c[:, 1].max())

    def surface_points(self, spacing: float, faces: tuple[str, ...] | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Sample a lattice on the box faces.

        Returns (points, outward normals) in world frame. ``faces`` selects a
        subset of {"+x","-x","+y","-y","+z","-z"}; all six by default.
        """
        if faces is None:
            faces = ("+x", "-x", "+y", "-y", "+z", "-z")
        h = self.half
        axis_of = {"x": 0, "y": 1, "z": 2}
        pts, nrm = [], []
        for face in faces:
            sign = 1.0 if face[0] == "+" else -1.0
            ax = axis_of[face[1]]
            others = [a for a in range(3) if a != ax]
            u = _lattice_1d(h[others[0]], spacing)
            v = _lattice_1d(h[others[1]], spacing)
            uu, vv = np.meshgrid(u, v, indexing="ij")
            local = np.zeros((uu.size, 3))
            local[:, ax] = sign * h[ax]
            local[:, others[0]] = uu.ravel()
            local[:, others[1]] = vv.ravel()
            n = np.zeros(3)
            n[ax] = sign
            pts.append(local)
            nrm.append(np.tile(n, (local.shape[0], 1)))
        local = np.concatenate(pts, axis=0)
        normals = np.concatenate(nrm, axis=0) @ self.rotation().T
        return self.to_world(local), normals

    def ray_intersect(self, origin: np.ndarray, dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Slab-test a bundle of rays against the box.

        Returns (t, hit_mask, normals): entry distances (inf when missed) and
        outward face normals at the entry point.
        """
        R = self.rotation()
        o = (np.asarray(origin, dtype=float) - self.center_np) @ R
        d = np.atleast_2d(dirs) @ R
        h = self.half
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / d
            t_lo = (-h - o) * inv
            t_hi = (h - o) * inv
        t_near = np.minimum(t_lo, t_hi)
        t_far = np.maximum(t_lo, t_hi)
        # Parallel rays outside a slab never hit it.
        parallel_miss = (np.abs(d) < 1e-12) & (np.abs(o) > h)
        t_near = np.where(np.abs(d) < 1e-12, -np.inf, t_near)
        t_far = np.where(np.abs(d) < 1e-12, np.inf, t_far)
        tmin = t_near.max(axis=1)
        tmax = t_far.min(axis=1)
        hit = (tmax >= tmin) & (tmax > 1e-9) & ~parallel_miss.any(axis=1)
        t = np.where(tmin > 1e-9, tmin, np.inf)
        hit &= np.isfinite(t)
        # Entry face: the axis achieving tmin, signed against the ray.
        entry_axis = np.argmax(np.where(np.isfinite(t_near), t_near, -np.inf), axis=1)
        local_normals = np.zeros_like(d)
        rows = np.arange(d.shape[0])
        local_normals[rows, entry_axis] = -np.sign(d[rows, entry_axis])
        normals = local_normals @ R.T
        t = np.where(hit, t, np.inf)
        return t, hit, normals


def _lattice_1d(half: float, spacing: float) -> np.ndarray:
    """Symmetric 1-D lattice covering [-half, half] including both rims."""
    n = max(int(math.floor(2 * half / spacing)) + 1, 2)
    return np.linspace(-half, half, n)


def aabb_exit_t(origin: np.ndarray, dirs: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Distance at which each ray leaves the axis-aligned box [lo, hi].

    The origin is assumed inside the box; rays pointing outward exit at 0.
    """
    o = np.asarray(origin, dtype=float)
    d = np.atleast_2d(dirs)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / d
        t_lo = (lo - o) * inv
        t_hi = (hi - o) * inv
    t_far = np.where(np.abs(d) < 1e-12, np.inf, np.maximum(t_lo, t_hi))
    return np.clip(t_far.min(axis=1), 0.0, None)


def segment_hits_box(p0: np.ndarray, p1: np.ndarray, box: OrientedBox) -> np.ndarray:
    """Whether segments p0[i]→p1[i] pass through the box (vectorized)."""
    p0 = np.atleast_2d(p0)
    p1 = np.atleast_2d(p1)
    delta = p1 - p0
    length = np.linalg.norm(delta, axis=1)
    safe = np.where(length > 1e-12, length, 1.0)
    dirs = delta / safe[:, None]
    out = np.zeros(p0.shape[0], dtype=bool)
    for i in range(p0.shape[0]):
        t, hit, _ = box.ray_intersect(p0[i], dirs[i : i + 1])
        out[i] = bool(hit[0]) and t[0] < length[i]
    return out


def quantize(points: np.ndarray, resolution: float) -> np.ndarray:
    """Floor-quantize points to integer voxel indices."""
    return np.floor(np.asarray(points, dtype=float) / resolution).astype(np.int64)


def dedup_voxels(points: np.ndarray, resolution: float) -> np.ndarray:
    """Indices of the first point falling in each voxel, in input order."""
    idx = quantize(points, resolution)
    _, first = np.unique(idx, axis=0, return_index=True)
    return np.sort(first)
