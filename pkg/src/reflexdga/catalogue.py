"""The shipped example inputs and the digest of their expected results."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from typing import List, Optional

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")
EXPECTED = "expected.json"

NAMES = ("ground_field", "dual_numbers_deg0", "dual_numbers_deg1", "contractible", "k_times_k",
         "a2_path_algebra", "m2_ground_field", "m2_dual_numbers_deg0", "poly_t_deg1_truncated")


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    path: str
    relpath: str
    digest: str


@dataclass(frozen=True)
class Catalogue:
    entries: List[CatalogueEntry]
    expected_path: str
    expected_path_rel: str
    expected_digest: str

    def names(self) -> List[str]:
        return [e.name for e in self.entries]


def _sha(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def catalogue() -> Catalogue:
    entries = []
    for n in NAMES:
        p = os.path.join(DATA_DIR, n + ".alg")
        entries.append(CatalogueEntry(n, p, f"data/{n}.alg", _sha(p)))
    exp = os.path.join(DATA_DIR, EXPECTED)
    return Catalogue(entries, exp, f"data/{EXPECTED}", _sha(exp) if os.path.exists(exp) else "")


def find_entry(name: str) -> Optional[CatalogueEntry]:
    for e in catalogue().entries:
        if e.name == name:
            return e
    return None


def expected_results(name: str, max_weight: int = 3) -> dict:
    """Small summary recomputed by the golden tests and stored in ``data/expected.json``."""
    from .algebra import cohomology_dims, radical, semisimple_quotient, validate_dga
    from .complexes import TruncationPolicy
    from .hochschild import hh_cohomology
    from .io import read_document
    from .koszul import reflexivity_report
    doc = read_document(find_entry(name).path)
    a = doc.algebra
    n = min(max_weight, 2) if a.dim > 4 else max_weight
    policy = TruncationPolicy(n, (-6, 6))
    hh = hh_cohomology(a, policy)
    return {
        "valid": validate_dga(a).ok,
        "dim": a.dim,
        "cohomology": {str(d): c for d, c in sorted(cohomology_dims(a).items())},
        "radical_dim": radical(a).dim,
        "semisimple_quotient_dim": semisimple_quotient(a).dim,
        "hh_max_weight": n,
        "hh_nonzero": [[m, w, d] for (m, w), d in sorted(hh.comparable().items(),
                                                         key=lambda kv: (kv[0][1] or 0, kv[0][0]))],
        "reflexivity": reflexivity_report(a, policy).verdict,
    }


def write_expected() -> str:
    import json
    data = {n: expected_results(n) for n in NAMES}
    path = os.path.join(DATA_DIR, EXPECTED)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
