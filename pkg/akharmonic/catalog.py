# Built-in catalog of invariant almost Hermitian structures

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Union
import logging

from akharmonic.config import CATALOG_EXPORT_SUFFIX
from akharmonic.errors import InputError
from akharmonic.models import ManifoldSpec
from akharmonic.specfile import SpecDocument, parse_document

logger = logging.getLogger(__name__)

# ==================== Spec texts ====================

T4_KAHLER = """\
# flat torus with its standard Kahler structure
[meta]
name = t4-kahler

[algebra]
dim 4
d e1 = 0
d e2 = 0
d e3 = 0
d e4 = 0

[J]
0 -1 0 0
1 0 0 0
0 0 0 -1
0 0 1 0

[metric]
1 0 0 0
0 1 0 0
0 0 1 0
0 0 0 1
"""

KODAIRA_THURSTON_AK = """\
# Kodaira-Thurston nilmanifold, J e1 = e3, J e2 = e4; almost Kahler for t > 0
[meta]
name = kodaira-thurston-ak
param t = 1

[algebra]
dim 4
d e1 = 0
d e2 = 0
d e3 = 0
d e4 = e1^e2

[J]
0 0 -1 0
0 0 0 -1
1 0 0 0
0 1 0 0

[metric]
1 0 0 0
0 t 0 0
0 0 1 0
0 0 0 t
"""

KODAIRA_THURSTON_HERM = """\
# Kodaira-Thurston nilmanifold, J e1 = e2, J e3 = e4; integrable, never almost Kahler
[meta]
name = kodaira-thurston-herm
param t = 1

[algebra]
dim 4
d e1 = 0
d e2 = 0
d e3 = 0
d e4 = e1^e2

[J]
0 -1 0 0
1 0 0 0
0 0 0 -1
0 0 1 0

[metric]
1 0 0 0
0 1 0 0
0 0 t 0
0 0 0 t
"""

KODAIRA_THURSTON_JT = """\
# Kodaira-Thurston nilmanifold, a curve J_t of structures calibrated by e1^e3 + e2^e4
[meta]
name = kodaira-thurston-jt
param t = 0

[algebra]
dim 4
d e1 = 0
d e2 = 0
d e3 = 0
d e4 = e1^e2

[J]
0 0 -1 -t
0 0 -t -(1+t^2)
1+t^2 -t 0 0
-t 1 0 0

[metric]
1+t^2 -t 0 0
-t 1 0 0
0 0 1 t
0 0 t 1+t^2
"""

# ==================== Entries ====================

@dataclass(frozen=True)
class CatalogEntry:
    id: str
    summary: str
    text: str
    # report cells pinned for the default parameters
    expected: Mapping[str, int] = field(default_factory=dict)

    def document(self) -> SpecDocument:
        return parse_document(self.text, source=self.id)


def _torus_delbar() -> Dict[str, int]:
    sizes = (1, 2, 1)
    return {f"delbar[{p},{q}]": sizes[p] * sizes[q] for p in range(3) for q in range(3)}


CATALOG: Dict[str, CatalogEntry] = {
    entry.id: entry for entry in (
        CatalogEntry(
            id="t4-kahler",
            summary="abelian, J e1 = e2, J e3 = e4, flat metric",
            text=T4_KAHLER,
            expected={
                "b[0]": 1, "b[1]": 4, "b[2]": 6, "b[3]": 4, "b[4]": 1,
                "b_plus": 3, "b_minus": 3,
                "d_dc_k[1]": 4, "h_minus_J": 2, "delta_deltabar_k[2]": 6,
                **_torus_delbar(),
            },
        ),
        CatalogEntry(
            id="kodaira-thurston-ak",
            summary="de4 = e1^e2, J e1 = e3, J e2 = e4, g = diag(1, t, 1, t)",
            text=KODAIRA_THURSTON_AK,
            expected={
                "b[0]": 1, "b[1]": 3, "b[2]": 4, "b[3]": 3, "b[4]": 1,
                "b_plus": 2, "b_minus": 2,
                "d_dc_k[1]": 2, "d_dc_k[3]": 3, "h_minus_J": 1, "delta_deltabar_k[2]": 4,
                "d_pq[1,0]": 1, "d_pq[2,0]": 0, "delbar[0,1]": 1, "del_delbar_pq[1,2]": 1,
            },
        ),
        CatalogEntry(
            id="kodaira-thurston-herm",
            summary="de4 = e1^e2, J e1 = e2, J e3 = e4, g = diag(1, 1, t, t)",
            text=KODAIRA_THURSTON_HERM,
            expected={
                "b[1]": 3, "b[2]": 4, "b_plus": 2, "b_minus": 2,
                "h_minus_J": 2, "del_delbar_pq[1,1]": 3, "delta_deltabar_k[2]": 5,
            },
        ),
        CatalogEntry(
            id="kodaira-thurston-jt",
            summary="de4 = e1^e2, J_t sheared by t, omega = e1^e3 + e2^e4 fixed; "
                    "h^1_d+dc stays 2, the curve exercises J-varying sweeps",
            text=KODAIRA_THURSTON_JT,
            expected={"b[1]": 3, "b_minus": 2, "d_dc_k[1]": 2, "h_minus_J": 1},
        ),
    )
}


def ids() -> List[str]:
    return list(CATALOG)


def entry(entry_id: str) -> CatalogEntry:
    if entry_id not in CATALOG:
        raise InputError(f"unknown catalog id {entry_id!r}; choose from {', '.join(CATALOG)}")
    return CATALOG[entry_id]


def load(entry_id: str, params: Optional[Mapping[str, Fraction]] = None) -> ManifoldSpec:
    """Instantiate a catalog entry, overriding its parameters if given"""
    return entry(entry_id).document().instantiate(params)


def export(directory: Union[str, Path]) -> List[Path]:
    """
    Write every catalog text to its own file

    Args:
        directory: target directory, created when missing

    Returns:
        Paths written, in catalog order
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for item in CATALOG.values():
            path = directory / f"{item.id}{CATALOG_EXPORT_SUFFIX}"
            path.write_text(item.text, encoding="utf-8")
            written.append(path)
    except OSError as e:
        raise InputError(f"cannot export catalog to {directory}: {e}")
    logger.info(f"✓ Exported {len(written)} catalog entries to {directory}")
    return written
