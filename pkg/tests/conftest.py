"""Shared fixtures.

The expensive objects (symmetric-power datasets and their completed
special values) are session-scoped and lazy: tests that never touch the
degree-6 or degree-8 fixtures never pay for them.  Values feeding frozen
comparisons were computed at 192 bits with an absolute target well below
every tolerance asserted against them.
"""

import math
import os

import pytest
from mpmath import mp

from periodpoly import (CurveSpec, LFunctionData, Precision, SpecialValues,
                        parse_curve_file, parse_eps_overrides,
                        special_values, sym_lfunction_data)
from periodpoly.numutil import log_gamma_c_real

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data_path(name):
    return os.path.abspath(os.path.join(DATA_DIR, name))


@pytest.fixture(scope="session")
def curve_table():
    return {c.label: c for c in parse_curve_file(data_path("curves.txt"))}


@pytest.fixture(scope="session")
def eps_table():
    return parse_eps_overrides(data_path("eps_overrides.txt"))


def _scale(data):
    ln = 0.5 * data.weight * math.log(data.conductor)
    for nu, h in enumerate(data.hodge):
        ln += h * log_gamma_c_real(data.weight - nu)
    return max(1.0, math.exp(ln))


@pytest.fixture(scope="session")
def curve_11a1(curve_table):
    return curve_table["11a1"]


@pytest.fixture(scope="session")
def sym3_data(curve_11a1, eps_table):
    return sym_lfunction_data(curve_11a1, 3, 10000,
                              eps_table[("11a1", 3)])


@pytest.fixture(scope="session")
def sym3_vals(sym3_data):
    return special_values(sym3_data, Precision(192, 1e-25))


@pytest.fixture(scope="session")
def sym5_data(curve_11a1, eps_table):
    return sym_lfunction_data(curve_11a1, 5, 100000,
                              eps_table[("11a1", 5)])


@pytest.fixture(scope="session")
def sym5_vals(sym5_data):
    target = _scale(sym5_data) * 1e-25
    return special_values(sym5_data, Precision(192, target))


@pytest.fixture(scope="session")
def sym7_data(curve_11a1, eps_table):
    # the degree-8 tail majorant asks for ~77k terms at the target below
    return sym_lfunction_data(curve_11a1, 7, 90000,
                              eps_table[("11a1", 7)])


@pytest.fixture(scope="session")
def sym7_vals(sym7_data):
    # Reduced precision: the degree-8 tail majorants make a full 192-bit
    # certification far slower than anything the root-angle trend needs.
    target = _scale(sym7_data) * 1e-9
    return special_values(sym7_data, Precision(128, target))


@pytest.fixture(scope="session")
def trend_sym3(curve_table, eps_table):
    """Weight-3 datasets over several conductors for the angle trend."""
    out = {}
    for label in ("11a1", "14a1", "15a1"):
        curve = curve_table[label]
        data = sym_lfunction_data(curve, 3, 10000, eps_table[(label, 3)])
        target = _scale(data) * 1e-12
        out[label] = (data, special_values(data, Precision(128, target)))
    return out


def synthetic_m1(delta, h0, bits=192):
    """Weight-3 dataset with prescribed central-to-edge ratio delta.

    Lambda(1) = Lambda(3) = 1 and Lambda(2) = delta, eps = +1; the Hodge
    vector is (h0, 1) so h_0 is free while the degree stays positive.
    """
    hodge = (h0, 1)
    data = LFunctionData(weight=3, degree=2 * (h0 + 1), conductor=5,
                         hodge=hodge, root_number=1,
                         coefficients=(mp.mpf(1),),
                         label="synthetic-m1-%g-%d" % (delta, h0))
    with mp.workprec(bits + 16):
        tiny = mp.mpf(2) ** (-bits)
        vals = SpecialValues(weight=3, values={
            1: (mp.mpf(1), tiny),
            2: (mp.mpf(delta), tiny),
            3: (mp.mpf(1), tiny),
        }, bits=bits, target=float(tiny), label=data.label)
    return data, vals
