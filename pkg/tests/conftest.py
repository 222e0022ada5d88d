import pytest

from ccfilter.datagen import SensorErrorModel, TrajectorySpec, desk_spec, make_dataset

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def desk_dataset():
    """600 s @ 100 Hz sinusoidal motion, 0.02 rad/s bias on every axis."""
    err = SensorErrorModel(gyro_bias_initial=(0.02, 0.02, 0.02))
    return make_dataset(desk_spec(seed=1), err)


@pytest.fixture(scope="session")
def short_dataset():
    return make_dataset(TrajectorySpec(duration=20.0, rate=100.0, seed=3))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
