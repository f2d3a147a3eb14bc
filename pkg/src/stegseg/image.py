"""Pixel buffers and lossless image file I/O.

Carriers are 8-bit gray, RGB, or RGBA buffers, row-major and
channel-interleaved. Only lossless file formats are accepted: PNG
(via Pillow) and binary PPM (P6, RGB only). Anything lossy would
destroy the embedded low bits and is rejected outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import InvalidImage

_PIL_MODES = {1: "L", 3: "RGB", 4: "RGBA"}


@dataclass(frozen=True)
class RasterImage:
    width: int
    height: int
    channels: int
    pixels: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InvalidImage("image dimensions must be positive")
        if self.channels not in (1, 3, 4):
            raise InvalidImage("channel count must be 1, 3 or 4")
        if len(self.pixels) != self.width * self.height * self.channels:
            raise InvalidImage(
                f"pixel buffer is {len(self.pixels)} bytes, expected "
                f"{self.width * self.height * self.channels}"
            )

    @property
    def total_slots(self) -> int:
        """Number of channel bytes, the embedding address space."""
        return self.width * self.height * self.channels

    def to_array(self) -> np.ndarray:
        """(height, width, channels) uint8 view of the buffer."""
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(
            self.height, self.width, self.channels
        )

    def flat(self) -> np.ndarray:
        return np.frombuffer(self.pixels, dtype=np.uint8)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RasterImage":
        if arr.ndim == 2:
            arr = arr[:, :, np.newaxis]
        if arr.ndim != 3 or arr.dtype != np.uint8:
            raise InvalidImage("expected a 2-d or 3-d uint8 array")
        h, w, c = arr.shape
        return cls(width=w, height=h, channels=c, pixels=arr.tobytes())


def psnr(reference: RasterImage, distorted: RasterImage) -> float:
    """Peak signal-to-noise ratio in dB; inf for identical buffers."""
    if (reference.width, reference.height, reference.channels) != (
        distorted.width,
        distorted.height,
        distorted.channels,
    ):
        raise InvalidImage("psnr requires identical geometry")
    a = reference.flat().astype(np.float64)
    b = distorted.flat().astype(np.float64)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 * 255.0 / mse)


def read_image(path) -> RasterImage:
    """Load a PNG or binary PPM file into a pixel buffer."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".ppm":
        return _read_ppm(path)
    if suffix != ".png":
        raise InvalidImage(f"unsupported image format: {suffix or path.name}")
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode == "P":
                im = im.convert("RGBA" if "transparency" in im.info else "RGB")
            if im.mode not in ("L", "RGB", "RGBA"):
                raise InvalidImage(f"unsupported PNG mode: {im.mode}")
            arr = np.asarray(im, dtype=np.uint8)
    except InvalidImage:
        raise
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise InvalidImage(f"cannot decode {path.name}: {exc}") from exc
    return RasterImage.from_array(arr)


def write_image(path, image: RasterImage) -> None:
    """Write a pixel buffer losslessly, choosing the codec by extension."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".ppm":
        _write_ppm(path, image)
        return
    if suffix != ".png":
        raise InvalidImage(
            f"refusing to write {suffix or path.name}: only lossless "
            "PNG and PPM outputs are supported"
        )
    arr = image.to_array()
    if image.channels == 1:
        arr = arr[:, :, 0]
    Image.fromarray(arr, mode=_PIL_MODES[image.channels]).save(path, format="PNG")


def _read_ppm(path: Path) -> RasterImage:
    data = path.read_bytes()
    if not data.startswith(b"P6"):
        raise InvalidImage("PPM file is not binary P6")
    fields = []
    pos = 2
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise InvalidImage("truncated PPM header")
        fields.append(data[start:pos])
    pos += 1  # single whitespace after maxval
    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError as exc:
        raise InvalidImage("malformed PPM header") from exc
    if maxval != 255:
        raise InvalidImage("only 8-bit PPM (maxval 255) is supported")
    expected = width * height * 3
    raster = data[pos : pos + expected]
    if len(raster) != expected:
        raise InvalidImage("PPM pixel data truncated")
    return RasterImage(width=width, height=height, channels=3, pixels=raster)


def _write_ppm(path: Path, image: RasterImage) -> None:
    if image.channels != 3:
        raise InvalidImage("binary PPM holds RGB images only")
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    path.write_bytes(header + image.pixels)
