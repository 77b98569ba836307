import pytest

from akharmonic import catalog
from akharmonic.geometry import build_suite
from akharmonic.harmonics import HarmonicSolver, full_report

# Hand-computed 2-form kernels in theta coordinates, basis order
# phi1^phi2, phi1^phibar1, phi1^phibar2, phi2^phibar1, phi2^phibar2, phibar1^phibar2
TWO_FORM_KERNELS = {
    "t4-kahler": {
        "delta+deltabar-2": [[1 if i == j else 0 for j in range(6)] for i in range(6)],
        "del+delbar-(1,1)": [[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]],
        "antiinvariant-J": [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]],
    },
    # d(phi1^phi2) = d(phi2^phibar1) = d(phibar1^phibar2) = -d(phi1^phibar2) = e123
    "kodaira-thurston-ak": {
        "delta+deltabar-2": [[0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0], [1, 0, 0, 0, 0, -1]],
        "del+delbar-(1,1)": [[0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0]],
        "antiinvariant-J": [[1, 0, 0, 0, 0, -1]],
    },
}


class _Assembled:
    """Suites, solvers and reports per catalog id, built once per session"""

    def __init__(self):
        self._cache = {}

    def __call__(self, entry_id):
        if entry_id not in self._cache:
            spec = catalog.load(entry_id)
            suite = build_suite(spec)
            solver = HarmonicSolver(suite)
            self._cache[entry_id] = (spec, suite, solver)
        return self._cache[entry_id]

    def spec(self, entry_id):
        return self(entry_id)[0]

    def suite(self, entry_id):
        return self(entry_id)[1]

    def solver(self, entry_id):
        return self(entry_id)[2]

    def report(self, entry_id):
        key = ("report", entry_id)
        if key not in self._cache:
            _, suite, solver = self(entry_id)
            self._cache[key] = full_report(suite, solver)
        return self._cache[key]


@pytest.fixture(scope="session")
def assembled():
    return _Assembled()


@pytest.fixture
def kt_ak(assembled):
    return assembled.suite("kodaira-thurston-ak")


@pytest.fixture
def kt_herm(assembled):
    return assembled.suite("kodaira-thurston-herm")


@pytest.fixture
def torus(assembled):
    return assembled.suite("t4-kahler")


@pytest.fixture(scope="session")
def two_form_kernels():
    return TWO_FORM_KERNELS
