"""Quiver files and the bundled golden corpus.

A quiver file is UTF-8 JSON::

    {"name": "b1", "vertices": ["1", "2", "3"],
     "arrows": [["1", "2", "d"], ...],
     "vectors": {"alpha": [1, 1, 1]}, "weights": {"sigma_ac": [2, 1, -3]},
     "provenance": {...}}

``vectors``, ``weights`` and ``provenance`` are optional.
"""

from __future__ import annotations

import json
import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .lattice import Quiver, QuiverError

CORPUS_DIR = Path(__file__).parent / "corpus"
CORPUS_NAMES = ("theta2", "theta3", "theta4", "theta22", "b1", "b2", "b3", "b4", "b41", "c36", "ex0")


class QuiverFileError(ValueError):
    pass


@dataclass
class QuiverFile:
    quiver: Quiver
    vectors: dict[str, tuple[int, ...]] = field(default_factory=dict)
    weights: dict[str, tuple[int, ...]] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    path: str = ""

    @property
    def name(self) -> str:
        return self.quiver.name

    def vector(self, spec: str | Sequence[int], kind: str = "vector") -> tuple[int, ...]:
        """Resolve a named entry or a comma-separated integer list."""
        return parse_vector(spec, self.quiver.n, {**self.weights, **self.vectors}, kind)

    def to_dict(self) -> dict:
        d = self.quiver.to_dict()
        d["vectors"] = {k: list(v) for k, v in self.vectors.items()}
        d["weights"] = {k: list(v) for k, v in self.weights.items()}
        if self.provenance:
            d["provenance"] = self.provenance
        return d


def parse_vector(spec, n: int, named: dict | None = None, kind: str = "vector") -> tuple[int, ...]:
    if not isinstance(spec, str):
        out = tuple(int(x) for x in spec)
    elif named and spec in named:
        out = tuple(named[spec])
    else:
        try:
            out = tuple(int(x) for x in spec.replace(" ", "").split(",") if x != "")
        except ValueError:
            known = ", ".join(sorted(named)) if named else "none"
            raise QuiverFileError(
                f"{kind} {spec!r} is neither a comma-separated integer list nor a named entry (known: {known})"
            ) from None
    if len(out) != n:
        raise QuiverFileError(f"{kind} {spec!r} has {len(out)} entries, the quiver has {n} vertices")
    return out


def from_dict(d: dict, path: str = "") -> QuiverFile:
    try:
        verts = [str(v) for v in d["vertices"]]
        arrows = [(str(t), str(h), str(lbl)) for t, h, lbl in d["arrows"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise QuiverFileError(f"{path or 'quiver file'}: needs 'vertices' and 'arrows' [tail, head, label] ({exc})")
    try:
        q = Quiver.from_arrows(verts, arrows, d.get("name", ""))
    except QuiverError as exc:
        raise QuiverFileError(f"{path or 'quiver file'}: {exc}") from None
    named = {}
    for section in ("vectors", "weights"):
        named[section] = {}
        for k, v in (d.get(section) or {}).items():
            named[section][k] = parse_vector(list(v), q.n, None, f"{section}.{k}")
    return QuiverFile(q, named["vectors"], named["weights"], d.get("provenance") or {}, path)


def load(path_or_name: str | Path) -> QuiverFile:
    """Load a quiver file by path, or a bundled corpus entry by name."""
    p = Path(path_or_name)
    if not p.exists():
        bundled = CORPUS_DIR / f"{p.stem}.json"
        if p.parent in (Path("."), Path("corpus")) and bundled.exists():
            p = bundled
        else:
            raise QuiverFileError(f"no such quiver file: {path_or_name}")
    try:
        d = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise QuiverFileError(f"{p}: malformed JSON ({exc})") from None
    return from_dict(d, str(p))


def load_corpus(directory: str | Path | None = None) -> dict[str, QuiverFile]:
    base = Path(directory) if directory else CORPUS_DIR
    missing = [n for n in CORPUS_NAMES if not (base / f"{n}.json").exists()]
    if missing:
        raise QuiverFileError(f"corpus at {base} is missing entries: {', '.join(missing)}")
    return {n: load(base / f"{n}.json") for n in CORPUS_NAMES}


_FLAT = re.compile(r"\[[^\[\]{}]*\]")


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, scalar lists on one line."""
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return _FLAT.sub(lambda m: re.sub(r"\s*\n\s*", " ", m.group(0)).replace("[ ", "[").replace(" ]", "]"), text) + "\n"


# -- corpus generation ----------------------------------------------------------


def _theta(n: int) -> dict:
    return {
        "name": f"theta{n}",
        "vertices": ["1", "2"],
        "arrows": [["1", "2", f"a{i + 1}"] for i in range(n)],
        "vectors": {"alpha": [1, 1]},
        "weights": {"sigma": [1, -1]},
        "provenance": {"source": "pinned", "constraints": [f"generalized Kronecker quiver with {n} arrows"]},
    }


def pinned_entries() -> dict[str, dict]:
    out = {f"theta{n}": _theta(n) for n in (2, 3, 4)}
    out["theta22"] = {
        "name": "theta22",
        "vertices": ["1", "2", "3"],
        "arrows": [["1", "3", "a1"], ["1", "3", "a2"], ["2", "3", "b1"], ["2", "3", "b2"]],
        "vectors": {"alpha": [1, 1, 1]},
        "weights": {},
        "provenance": {
            "source": "computed",
            "constraints": ["projected quiver of b2 through the exceptional root (0,0,1,0)"],
        },
    }
    out["b1"] = {
        "name": "b1",
        "vertices": ["1", "2", "3"],
        "arrows": [["1", "2", "d"], ["1", "3", "c"], ["2", "3", "a"], ["2", "3", "b"]],
        "vectors": {"alpha": [1, 1, 1], "eps": [1, 0, 1], "beta_ac": [6, 5, 3], "beta_div": [4, 3, 2]},
        "weights": {"sigma_ac": [2, 1, -3], "sigma_si": [1, 1, -2]},
        "provenance": {
            "source": "pinned",
            "constraints": ["canonical weight (2,1,-3)", "(1,0,1) exceptional", "dual K0 lift of (4,3,2) is (4,4,2)"],
        },
    }
    out["c36"] = {
        "name": "c36",
        "vertices": ["1", "2", "3"],
        "arrows": [["1", "2", "a"], ["2", "3", "b"], ["2", "3", "c"]],
        "vectors": {"alpha": [1, 4, 3], "eps": [0, 3, 2], "beta": [4, 7, 5], "a": [1, 4, 3]},
        "weights": {"sigma": [3, 3, -5], "s": [3, 3, -5]},
        "provenance": {
            "source": "pinned",
            "constraints": ["<eps,eps>=1", "<eps,alpha>=0", "moduli dimension 3", "dual projection of I2 has dim (16,16,12)"],
        },
    }
    out["ex0"] = {
        "name": "ex0",
        "vertices": ["1", "2", "3"],
        "arrows": [["1", "2", "a"], ["1", "2", "b"], ["2", "3", "c"]],
        "vectors": {"alpha": [2, 2, 1], "eps": [1, 2, 0]},
        "weights": {},
        "provenance": {"source": "pinned", "constraints": ["cone rays (1,1,0) and (3,2,2) in dimension coordinates"]},
    }
    return out


_B_VECTORS = {
    "b2": {"alpha": [1, 1, 1, 1], "eps1": [1, 0, 0, 1], "eps2": [0, 1, 0, 1], "eps3": [0, 0, 1, 0], "eps": [0, 1, 0, 1]},
    "b3": {"alpha": [1, 1, 1, 1, 1], "eps": [0, 0, 1, 1, 0]},
    "b4": {"alpha": [1, 1, 1, 1, 1, 2], "eps": [0, 0, 0, 1, 1, 1]},
    "b41": {"alpha": [1, 1, 1, 1, 1, 2, 2], "eps1": [0, 0, 0, 0, 0, 1, 0], "eps2": [0, 0, 0, 1, 1, 1, 1], "eps": [0, 0, 0, 1, 1, 1, 1]},
}
_B_WEIGHTS = {
    "b2": [2, 2, -1, -3],
    "b3": [2, 2, 2, -3, -3],
    "b4": [2, 2, 2, 2, 2, -5],
    "b41": [2, 2, 2, 2, 2, 0, -5],
}


def reconstructed_entries() -> dict[str, dict]:
    from .reconstruct import b_series

    out = {}
    for name, (res, q) in b_series().items():
        d = q.to_dict()
        d["name"] = name
        d["vectors"] = _B_VECTORS[name]
        d["weights"] = {"sigma_ac": _B_WEIGHTS[name]}
        d["provenance"] = {
            "source": "reconstructed",
            "search": "all acyclic orientations with the stated arrow count",
            "canonical_weight": _B_WEIGHTS[name],
            **res.to_dict(),
            "choice": "first solution" if len(res.solutions) > 1 else "unique solution",
        }
        out[name] = d
    return out


def write_corpus(directory: str | Path | None = None) -> list[Path]:
    base = Path(directory) if directory else CORPUS_DIR
    base.mkdir(parents=True, exist_ok=True)
    entries = {**pinned_entries(), **reconstructed_entries()}
    written = []
    for name in CORPUS_NAMES:
        p = base / f"{name}.json"
        p.write_text(dumps(entries[name]), encoding="utf-8")
        written.append(p)
    return written


if __name__ == "__main__":
    for p in write_corpus():
        print(p)
