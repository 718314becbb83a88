"""
conftest.py — Shared test fixtures for the twomode test suite.
"""

import logging
import textwrap

import pytest

from twomode.physics.fock_algebra import ModeDims
from twomode.physics.model import Deformation, ModelSpec


@pytest.fixture
def small_dims():
    return ModeDims(4, 5)


@pytest.fixture
def dims10():
    return ModeDims(10, 10)


@pytest.fixture
def linear_spec():
    """Chiral-mirror coupling in the amplifying regime (r=2)."""
    return ModelSpec.from_asymmetry(g=0.1, r=2.0)


@pytest.fixture
def soliplasmon_spec():
    return ModelSpec.from_asymmetry(g=0.1, r=2.0, u=-0.01, deformation=Deformation.SQRT_N)


@pytest.fixture
def tiny_scenario_text():
    """A scenario that evolves in well under a second."""
    return textwrap.dedent(
        """\
        name: tiny
        model:
          g: 0.1
          r: 2
        numerics:
          dim_a: 4
          dim_b: 4
          dt: 0.01
          t_max: 1.0
          sample_every: 10
          path: both
        """
    )


@pytest.fixture
def restore_logging():
    """Undo logging configuration done by setup_logging(force=True)."""
    root = logging.getLogger()
    audit = logging.getLogger("run_audit")
    saved = (list(root.handlers), root.level, list(audit.handlers), audit.level, audit.propagate)
    yield
    for logger in (root, audit):
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
            handler.close()
    root_handlers, root_level, audit_handlers, audit_level, audit_propagate = saved
    for handler in root_handlers:
        root.addHandler(handler)
    root.setLevel(root_level)
    for handler in audit_handlers:
        audit.addHandler(handler)
    audit.setLevel(audit_level)
    audit.propagate = audit_propagate
