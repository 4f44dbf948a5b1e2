"""Text formats: temporal edge lists, trajectories, path collections, layouts, cluster maps."""

from __future__ import annotations

import csv
import io
import json
from typing import IO, Iterable, Optional

from .layout import Layout
from .paths import PathCollection
from .temporal import TemporalGraph

DELIMITERS = {"tab": "\t", "comma": ",", "space": " "}


class DataError(ValueError):
    """Malformed input data; carries the offending line when known."""

    def __init__(self, message: str, line_no: Optional[int] = None, line: Optional[str] = None):
        where = f"line {line_no}: " if line_no is not None else ""
        shown = f" ({line!r})" if line is not None else ""
        super().__init__(f"{where}{message}{shown}")
        self.line_no = line_no
        self.line = line


def _data_lines(stream: IO[str]):
    for no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield no, line


def _detect(line: str) -> Optional[str]:
    if "\t" in line:
        return "\t"
    if "," in line:
        return ","
    return None


def _split(line: str, sep: Optional[str]) -> list[str]:
    # a single space stands for any run of whitespace
    return [f.strip() for f in line.split(sep)] if sep not in (None, " ") else line.split()


def parse_temporal_edges(stream: IO[str], directed: bool = True, delimiter: Optional[str] = None) -> TemporalGraph:
    """Read ``source, target, time`` rows.

    ``delimiter`` is one of ``"\\t"``, ``","``, ``" "`` (any whitespace) or
    ``"auto"``/``None``, in which case the first data line decides (tab, then
    comma, then whitespace). Undirected input emits both orientations.
    """
    sep = delimiter
    detect = delimiter in (None, "auto")
    edges = []
    for no, line in _data_lines(stream):
        if detect:
            sep = _detect(line)
            detect = False
        fields = _split(line, sep)
        if len(fields) != 3 or not fields[0] or not fields[1]:
            raise DataError("expected three fields: source, target, time", no, line)
        v, w, t = fields
        try:
            ts = int(t)
        except ValueError:
            raise DataError(f"timestamp {t!r} is not an integer", no, line) from None
        if ts < 0:
            raise DataError(f"timestamp {ts} is negative", no, line)
        edges.append((v, w, ts))
        if not directed:
            edges.append((w, v, ts))
    return TemporalGraph(edges)


def write_temporal_edges(g: TemporalGraph, stream: IO[str], delimiter: str = ",") -> None:
    for v, w, t in g.edges:
        if delimiter in v or delimiter in w:
            raise DataError(f"vertex name {v if delimiter in v else w!r} contains the delimiter")
        stream.write(f"{v}{delimiter}{w}{delimiter}{t}\n")


def parse_edge_pairs(stream: IO[str]) -> list[tuple[str, str]]:
    """Vertex pairs from the first two fields of every row (extra fields ignored)."""
    pairs = []
    sep = None
    first = True
    for no, line in _data_lines(stream):
        if first:
            sep = _detect(line)
            first = False
        fields = _split(line, sep)
        if len(fields) < 2 or not fields[0] or not fields[1]:
            raise DataError("expected at least two fields: source, target", no, line)
        pairs.append((fields[0], fields[1]))
    return pairs


def parse_paths(stream: IO[str]) -> list[tuple[tuple, int]]:
    """Read trajectories: comma-separated nodes, optionally a tab and a frequency."""
    result = []
    for no, line in _data_lines(stream):
        nodes_part, _, freq_part = line.partition("\t")
        nodes = tuple(n.strip() for n in nodes_part.split(","))
        if len(nodes) < 2 or not all(nodes):
            raise DataError("a path needs at least two non-empty nodes", no, line)
        freq = 1
        if freq_part.strip():
            try:
                freq = int(freq_part)
            except ValueError:
                raise DataError(f"frequency {freq_part.strip()!r} is not an integer", no, line) from None
            if freq < 1:
                raise DataError(f"frequency {freq} is not positive", no, line)
        result.append((nodes, freq))
    return result


# -- path collections -----------------------------------------------------------

def path_collection_to_dict(pc: PathCollection, vertices: Optional[Iterable[str]] = None) -> dict:
    grouped: dict[str, dict[str, int]] = {}
    for length in pc.lengths:
        group = {}
        for p, c in sorted(pc.of_length(length).items()):
            bad = [v for v in p if "," in v or "\n" in v]
            if bad:
                raise DataError(f"vertex name {bad[0]!r} cannot be stored in a comma-joined key")
            group[",".join(p)] = c
        grouped[str(length)] = group
    doc = {"delta": pc.delta, "max_length": pc.max_length, "paths": grouped}
    doc["vertices"] = sorted(set(vertices) if vertices is not None else pc.vertices)
    return doc


def path_collection_from_dict(doc: dict) -> tuple[PathCollection, list[str]]:
    try:
        counts = {}
        for length, group in doc["paths"].items():
            for key, c in group.items():
                p = tuple(key.split(","))
                if len(p) - 1 != int(length):
                    raise DataError(f"path {key!r} listed under length {length}")
                counts[p] = int(c)
        pc = PathCollection(counts, int(doc["max_length"]), doc.get("delta"))
    except (KeyError, TypeError, AttributeError) as exc:
        raise DataError(f"malformed path collection: {exc}") from None
    vertices = sorted(set(doc.get("vertices", ())) | pc.vertices)
    return pc, vertices


def write_path_collection(pc: PathCollection, stream: IO[str], vertices=None) -> None:
    stream.write(json.dumps(path_collection_to_dict(pc, vertices), indent=2, sort_keys=True) + "\n")


def read_path_collection(stream: IO[str]) -> tuple[PathCollection, list[str]]:
    try:
        doc = json.load(stream)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc}") from None
    return path_collection_from_dict(doc)


# -- layouts --------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(x, ".17g")


def layout_to_json(layout: Layout) -> str:
    doc = {
        "positions": {v: [float(x), float(y)] for v, (x, y) in sorted(layout.positions.items())},
        "provenance": layout.provenance,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def layout_to_csv(layout: Layout) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vertex", "x", "y"])
    for v, (x, y) in sorted(layout.positions.items()):
        writer.writerow([v, _fmt(x), _fmt(y)])
    return buf.getvalue()


def write_layout(layout: Layout, stream: IO[str], fmt: str = "json") -> None:
    if fmt == "json":
        stream.write(layout_to_json(layout))
    elif fmt == "csv":
        stream.write(layout_to_csv(layout))
    else:
        raise ValueError(f"unknown layout format {fmt!r}")


def _position(x, y, where) -> tuple[float, float]:
    try:
        return float(x), float(y)
    except (TypeError, ValueError):
        raise DataError(f"non-numeric coordinates for {where}") from None


def read_layout(stream: IO[str], fmt: str = "json") -> Layout:
    positions: dict = {}
    if fmt == "json":
        text = stream.read()

        def no_duplicates(pairs):
            seen = {}
            for k, v in pairs:
                if k in seen:
                    raise DataError(f"duplicate vertex {k!r}")
                seen[k] = v
            return seen

        try:
            doc = json.loads(text, object_pairs_hook=no_duplicates)
        except json.JSONDecodeError as exc:
            raise DataError(f"invalid JSON: {exc}") from None
        for v, xy in doc.get("positions", {}).items():
            if not isinstance(xy, list) or len(xy) != 2:
                raise DataError(f"position of {v!r} must be [x, y]")
            positions[v] = _position(*xy, v)
        return Layout(positions, doc.get("provenance", {}))
    if fmt == "csv":
        reader = csv.reader(stream)
        header = next(reader, None)
        if header != ["vertex", "x", "y"]:
            raise DataError(f"expected header vertex,x,y, got {header!r}", 1)
        for no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise DataError("expected three columns", no, ",".join(row))
            v, x, y = row
            if v in positions:
                raise DataError(f"duplicate vertex {v!r}", no, ",".join(row))
            positions[v] = _position(x, y, v)
        return Layout(positions, {})
    raise ValueError(f"unknown layout format {fmt!r}")


# -- cluster maps and vertex lists ------------------------------------------------

def write_cluster_map(clusters: dict, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["vertex", "cluster"])
    for v in sorted(clusters):
        writer.writerow([v, clusters[v]])


def read_vertex_values(stream: IO[str]) -> dict[str, str]:
    """Two-column CSV ``vertex,value`` (header optional, detected by the literal name ``vertex``)."""
    values = {}
    for no, row in enumerate(csv.reader(stream), start=1):
        if not row or row[0].startswith("#"):
            continue
        if no == 1 and row[0].strip().lower() == "vertex":
            continue
        if len(row) != 2:
            raise DataError("expected two columns: vertex,value", no, ",".join(row))
        v = row[0].strip()
        if v in values:
            raise DataError(f"duplicate vertex {v!r}", no, ",".join(row))
        values[v] = row[1].strip()
    return values


def read_vertex_list(stream: IO[str]) -> list[str]:
    return [line.strip() for _, line in _data_lines(stream)]
