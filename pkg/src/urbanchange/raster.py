"""In-memory raster model and bit-exact container I/O.

Scenes are float32 multiband grids with a 6-coefficient affine geotransform;
class and change maps are single-band uint8 grids. Both live on disk as a
small JSON header plus a raw little-endian binary sidecar, which keeps round
trips bit-exact without pulling in a GeoTIFF stack.

Pixel (row, col) maps to world coordinates through the affine
    x = gt[0] + col * gt[1] + row * gt[2]
    y = gt[3] + col * gt[4] + row * gt[5]
with the pixel center at (row + 0.5, col + 0.5). Rasters and maps are
treated as immutable after construction and are safe to share read-only
across workers.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError

CLASSMAP = "classmap"
CHANGEMAP = "changemap"
NODATA_CODE = 255

_CODE_DOMAIN = {
    CLASSMAP: (0, 1, NODATA_CODE),
    CHANGEMAP: (0, 1, 2, 3, NODATA_CODE),
}


def _check_geotransform(gt):
    if len(gt) != 6:
        raise ValidationError(f"geotransform needs 6 coefficients, got {len(gt)}")
    gt = tuple(float(v) for v in gt)
    if not all(math.isfinite(v) for v in gt):
        raise ValidationError("geotransform coefficients must be finite")
    if gt[1] <= 0:
        raise ValidationError(f"pixel_width must be > 0, got {gt[1]}")
    if gt[5] == 0:
        raise ValidationError("pixel_height must be nonzero")
    return gt


def _check_dims(width, height):
    if width < 1 or height < 1:
        raise ValidationError(f"dimensions must be positive, got {width}x{height}")


@dataclass(frozen=True)
class Window:
    """A rectangle of whole pixels inside a parent grid."""

    row0: int
    col0: int
    rows: int
    cols: int

    def __post_init__(self):
        if self.row0 < 0 or self.col0 < 0:
            raise ValidationError(f"window origin must be non-negative, got ({self.row0}, {self.col0})")
        if self.rows < 1 or self.cols < 1:
            raise ValidationError(f"window extent must be positive, got {self.rows}x{self.cols}")


class Raster:
    """Multiband float32 scene.

    data is stored band-sequential as a (band_count, height, width) array;
    a pixel is masked iff nodata is set and all of its band values equal it.
    """

    def __init__(self, width, height, band_count, geotransform, data, nodata=None):
        _check_dims(width, height)
        if band_count < 1:
            raise ValidationError(f"band_count must be positive, got {band_count}")
        self.width = int(width)
        self.height = int(height)
        self.band_count = int(band_count)
        self.geotransform = _check_geotransform(geotransform)
        self.nodata = None if nodata is None else float(nodata)

        arr = np.asarray(data, dtype=np.float32)
        expected = self.band_count * self.height * self.width
        if arr.size != expected:
            raise ValidationError(
                f"data has {arr.size} values, expected {expected} "
                f"({self.band_count} bands x {self.height} rows x {self.width} cols)"
            )
        self.data = arr.reshape(self.band_count, self.height, self.width)

    def __eq__(self, other):
        if not isinstance(other, Raster):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.band_count == other.band_count
            and self.geotransform == other.geotransform
            and self.nodata == other.nodata
            and np.array_equal(self.data, other.data)
        )

    def __repr__(self):
        return (
            f"Raster({self.width}x{self.height}, {self.band_count} bands, "
            f"nodata={self.nodata})"
        )

    def _check_bounds(self, row, col):
        if not 0 <= row < self.height:
            raise IndexError(f"row {row} out of range [0, {self.height})")
        if not 0 <= col < self.width:
            raise IndexError(f"col {col} out of range [0, {self.width})")

    def get_pixel(self, row, col, band):
        """Stored float32 value at (row, col, band); no interpolation."""
        self._check_bounds(row, col)
        if not 0 <= band < self.band_count:
            raise IndexError(f"band {band} out of range [0, {self.band_count})")
        return float(self.data[band, row, col])

    def pixel_vector(self, row, col):
        """All band values of one pixel as a (band_count,) array."""
        self._check_bounds(row, col)
        return self.data[:, row, col]

    def crop(self, window):
        """New raster covering the window, origin shifted through the affine."""
        if window.row0 + window.rows > self.height:
            raise IndexError(
                f"window rows [{window.row0}, {window.row0 + window.rows}) exceed height {self.height}"
            )
        if window.col0 + window.cols > self.width:
            raise IndexError(
                f"window cols [{window.col0}, {window.col0 + window.cols}) exceed width {self.width}"
            )
        sub = self.data[
            :,
            window.row0 : window.row0 + window.rows,
            window.col0 : window.col0 + window.cols,
        ].copy()
        return Raster(
            window.cols,
            window.rows,
            self.band_count,
            _shift_origin(self.geotransform, window.row0, window.col0),
            sub,
            nodata=self.nodata,
        )

    def mask(self):
        """Boolean (height, width) array of masked pixels (all bands == nodata)."""
        if self.nodata is None:
            return np.zeros((self.height, self.width), dtype=bool)
        return (self.data == np.float32(self.nodata)).all(axis=0)

    def pixel_center(self, row, col):
        """World coordinates of a pixel center (row/col may be fractional)."""
        return _affine(self.geotransform, row + 0.5, col + 0.5)

    def world_to_pixel(self, x, y):
        """Fractional (row, col) of a world point via the inverse affine."""
        gt = self.geotransform
        det = gt[1] * gt[5] - gt[2] * gt[4]
        dx = x - gt[0]
        dy = y - gt[3]
        col = (gt[5] * dx - gt[2] * dy) / det
        row = (gt[1] * dy - gt[4] * dx) / det
        return row, col


def _affine(gt, row, col):
    x = gt[0] + col * gt[1] + row * gt[2]
    y = gt[3] + col * gt[4] + row * gt[5]
    return x, y


def _shift_origin(gt, row0, col0):
    ox, oy = _affine(gt, float(row0), float(col0))
    return (ox, gt[1], gt[2], oy, gt[4], gt[5])


class ByteMap:
    """Single-band uint8 grid of class or transition codes; 255 is nodata."""

    def __init__(self, width, height, geotransform, codes, kind):
        _check_dims(width, height)
        if kind not in _CODE_DOMAIN:
            raise ValidationError(f"kind must be 'classmap' or 'changemap', got {kind!r}")
        self.width = int(width)
        self.height = int(height)
        self.geotransform = _check_geotransform(geotransform)
        self.kind = kind

        arr = np.asarray(codes, dtype=np.uint8)
        if arr.size != self.width * self.height:
            raise ValidationError(
                f"codes has {arr.size} values, expected {self.height * self.width}"
            )
        arr = arr.reshape(self.height, self.width)
        legal = np.zeros(256, dtype=bool)
        legal[list(_CODE_DOMAIN[kind])] = True
        bad = ~legal[arr]
        if bad.any():
            flat = int(np.argmax(bad))
            r, c = divmod(flat, self.width)
            raise ValidationError(
                f"illegal {kind} code {int(arr[r, c])} at row {r}, col {c}"
            )
        self.codes = arr

    def __eq__(self, other):
        if not isinstance(other, ByteMap):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.geotransform == other.geotransform
            and self.kind == other.kind
            and np.array_equal(self.codes, other.codes)
        )

    def __repr__(self):
        return f"ByteMap({self.kind}, {self.width}x{self.height})"

    def crop(self, window):
        if window.row0 + window.rows > self.height:
            raise IndexError(
                f"window rows [{window.row0}, {window.row0 + window.rows}) exceed height {self.height}"
            )
        if window.col0 + window.cols > self.width:
            raise IndexError(
                f"window cols [{window.col0}, {window.col0 + window.cols}) exceed width {self.width}"
            )
        sub = self.codes[
            window.row0 : window.row0 + window.rows,
            window.col0 : window.col0 + window.cols,
        ].copy()
        return ByteMap(
            window.cols,
            window.rows,
            _shift_origin(self.geotransform, window.row0, window.col0),
            sub,
            self.kind,
        )


# ---------------------------------------------------------------------------
# Container I/O: JSON header + raw binary sidecar
# ---------------------------------------------------------------------------


def _data_path_for(header_path):
    p = Path(header_path).with_suffix(".bin")
    if p == Path(header_path):
        raise ValidationError(f"header path {header_path} collides with its data file")
    return p


def _load_header(header_path):
    text = Path(header_path).read_text(encoding="utf-8")
    try:
        header = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON header {header_path}: {e}") from e
    if not isinstance(header, dict):
        raise ValidationError(f"header {header_path} is not a JSON object")
    return header


def _require(header, key, header_path):
    if key not in header:
        raise ValidationError(f"header {header_path} is missing key '{key}'")
    return header[key]


def _read_payload(header, header_path, itemsize, count):
    rel = _require(header, "data", header_path)
    data_path = Path(header_path).parent / rel
    payload = Path(data_path).read_bytes()
    expected = itemsize * count
    if len(payload) != expected:
        raise ValidationError(
            f"data file {data_path} is {len(payload)} bytes, expected {expected}"
        )
    return payload


def write_scene(raster, header_path):
    """Write header JSON + float32 binary; read_scene(write_scene(r)) == r."""
    header_path = Path(header_path)
    data_path = _data_path_for(header_path)
    header = {
        "width": raster.width,
        "height": raster.height,
        "bands": raster.band_count,
        "dtype": "float32",
        "layout": "band-sequential",
        "byte_order": "little-endian",
        "geotransform": list(raster.geotransform),
        "data": data_path.name,
    }
    if raster.nodata is not None:
        header["nodata"] = raster.nodata
    data_path.write_bytes(raster.data.astype("<f4", copy=False).tobytes())
    header_path.write_text(json.dumps(header, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_scene(header_path):
    """Read a scene written by write_scene; rejects any size or schema mismatch."""
    header = _load_header(header_path)
    width = _require(header, "width", header_path)
    height = _require(header, "height", header_path)
    bands = _require(header, "bands", header_path)
    dtype = _require(header, "dtype", header_path)
    if dtype != "float32":
        raise ValidationError(f"header {header_path}: expected dtype float32, got {dtype!r}")
    gt = _require(header, "geotransform", header_path)
    payload = _read_payload(header, header_path, 4, width * height * bands)
    data = np.frombuffer(payload, dtype="<f4")
    return Raster(width, height, bands, gt, data, nodata=header.get("nodata"))


def write_bytemap(bmap, header_path):
    """Write a class or change map in the same container scheme (uint8 payload)."""
    header_path = Path(header_path)
    data_path = _data_path_for(header_path)
    header = {
        "width": bmap.width,
        "height": bmap.height,
        "bands": 1,
        "dtype": "uint8",
        "layout": "band-sequential",
        "byte_order": "little-endian",
        "geotransform": list(bmap.geotransform),
        "kind": bmap.kind,
        "data": data_path.name,
    }
    data_path.write_bytes(bmap.codes.tobytes())
    header_path.write_text(json.dumps(header, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_bytemap(header_path):
    """Read a ByteMap, validating the code domain declared by its kind."""
    header = _load_header(header_path)
    width = _require(header, "width", header_path)
    height = _require(header, "height", header_path)
    dtype = _require(header, "dtype", header_path)
    if dtype != "uint8":
        raise ValidationError(f"header {header_path}: expected dtype uint8, got {dtype!r}")
    kind = _require(header, "kind", header_path)
    gt = _require(header, "geotransform", header_path)
    payload = _read_payload(header, header_path, 1, width * height)
    codes = np.frombuffer(payload, dtype=np.uint8)
    return ByteMap(width, height, gt, codes, kind)
