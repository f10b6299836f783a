import pytest

from scenval import make_point_set
from scenval.core import Label


def pytest_configure(config):
    # Register marks to avoid warnings in installed testing
    # sync with setup.cfg
    config.addinivalue_line("markers", "long")


@pytest.fixture
def write_csv(tmp_path):
    """Factory writing rows (lists of values or a raw string) to a csv file in tmp_path"""

    def _write(name, rows):
        path = tmp_path / name
        if isinstance(rows, str):
            path.write_text(rows, encoding="utf-8")
        else:
            path.write_text("".join(",".join(repr(float(x)) for x in row) + "\n" for row in rows), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def separated_pair():
    return make_point_set([[0.0], [1.0]], Label.EMPIRICAL), make_point_set([[100.0], [101.0]], Label.GENERATED)


@pytest.fixture
def interleaved_pair():
    return make_point_set([[0.0], [2.0]], Label.EMPIRICAL), make_point_set([[1.0], [3.0]], Label.GENERATED)
