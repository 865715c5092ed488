"""Forward warping with bilinear splatting and hole filling."""
import logging

import numpy as np

from .forward_map import ForwardMap

logger = logging.getLogger(__name__)

FILLED_WEIGHT = 1e-8


def _splat(channel: np.ndarray, fmap: ForwardMap):
    h, w = channel.shape
    tx = fmap.target_x[fmap.valid]
    ty = fmap.target_y[fmap.valid]
    values = channel[fmap.valid].astype(float)
    x0 = np.floor(tx).astype(int)
    y0 = np.floor(ty).astype(int)
    fx = tx - x0
    fy = ty - y0

    acc = np.zeros(h * w)
    weight = np.zeros(h * w)
    for dx, dy, wgt in (
        (0, 0, (1 - fx) * (1 - fy)),
        (1, 0, fx * (1 - fy)),
        (0, 1, (1 - fx) * fy),
        (1, 1, fx * fy),
    ):
        xi, yi = x0 + dx, y0 + dy
        inside = (xi >= 0) & (xi < w) & (yi >= 0) & (yi < h) & (wgt > 0)
        flat = yi[inside] * w + xi[inside]
        acc += np.bincount(flat, weights=wgt[inside] * values[inside], minlength=h * w)
        weight += np.bincount(flat, weights=wgt[inside], minlength=h * w)
    return acc.reshape(h, w), weight.reshape(h, w)


def _fill_lines(values: np.ndarray, filled: np.ndarray) -> None:
    """Interpolate unfilled runs between filled pixels along each row, in place."""
    idx = np.arange(values.shape[1])
    for r in range(values.shape[0]):
        known = filled[r]
        if known.sum() < 2 or known.all():
            continue
        first, last = np.flatnonzero(known)[[0, -1]]
        gap = ~known
        gap[:first] = False
        gap[last + 1 :] = False
        if gap.any():
            values[r, gap] = np.interp(idx[gap], idx[known], values[r, known])
            filled[r, gap] = True


def warp_channel(channel: np.ndarray, fmap: ForwardMap) -> np.ndarray:
    """Warp one float channel; never-reached pixels are 0."""
    acc, weight = _splat(channel, fmap)
    filled = weight > FILLED_WEIGHT
    out = np.zeros_like(acc)
    out[filled] = acc[filled] / weight[filled]
    _fill_lines(out, filled)
    out_t, filled_t = out.T.copy(), filled.T.copy()
    _fill_lines(out_t, filled_t)
    out, filled = out_t.T, filled_t.T
    out[~filled] = 0.0
    return out


def warp_image(img: np.ndarray, fmap: ForwardMap) -> np.ndarray:
    """Push every source pixel to its target and interpolate the holes.

    Args:
        img: Grayscale (H, W) or colour (H, W, C) image
        fmap: Forward map with the same (H, W)

    Returns:
        Warped image with ``img``'s dtype
    """
    if img.shape[:2] != fmap.shape:
        raise ValueError(f"Image shape {img.shape[:2]} does not match map {fmap.shape}")
    if img.ndim == 2:
        out = warp_channel(img, fmap)
    else:
        out = np.stack([warp_channel(img[..., c], fmap) for c in range(img.shape[2])], axis=-1)
    if np.issubdtype(img.dtype, np.integer):
        info = np.iinfo(img.dtype)
        return np.clip(np.rint(out), info.min, info.max).astype(img.dtype)
    return out.astype(img.dtype)
