import math

import pydantic
import pytest

from zenodae.app.errors import ParameterError
from zenodae.app.models.cost import CostInputs, Verdict
from zenodae.app.numerics import costmodel

HS = [1 / 8, 1 / 16, 1 / 32, 1 / 64]


def test_default_normalizations():
    inputs = CostInputs(t=1.0, eps=1e-3, h=1 / 16)
    assert inputs.alphaH == pytest.approx(8 * 16 ** 2)
    assert inputs.alphaD == pytest.approx(4 * 16)


@pytest.mark.parametrize("field", [{"eps": 1.0}, {"eps": 0.0}, {"t": 0.0}, {"h": -1.0}])
def test_inputs_validation(field):
    values = {"t": 1.0, "eps": 1e-3, "h": 0.1}
    values.update(field)
    with pytest.raises(pydantic.ValidationError):
        CostInputs(**values)


def test_direct_cost_unit_case():
    inputs = CostInputs(t=1.0, eps=0.5, h=1.0, alphaH=1.0, alphaD=1.0, gamma=1.0)
    queries, gates, p = costmodel.direct_cost(inputs)
    assert p == 1
    sim = costmodel.hamiltonian_sim_queries(1.0, 0.5)
    assert queries == pytest.approx(2 * sim)
    assert gates == pytest.approx(2 * sim)


def test_direct_cost_is_linear_in_long_times():
    base = dict(eps=0.1, h=1.0, alphaH=1.0, alphaD=1e-3)
    short, _, _ = costmodel.direct_cost(CostInputs(t=1e6, **base))
    long, _, _ = costmodel.direct_cost(CostInputs(t=2e6, **base))
    assert 1.99 <= long / short <= 2.01


def test_projector_degree_vanishes_for_small_arguments():
    inputs = CostInputs(t=1e-4, eps=0.5, h=1.0, alphaH=8.0)
    queries, _, p = costmodel.direct_cost(inputs)
    assert p == 0
    assert queries == pytest.approx(costmodel.hamiltonian_sim_queries(8e-4, 0.5))


def test_stokes_scaling_under_refinement():
    for coarse, fine in zip(HS, HS[1:]):
        a = costmodel.evaluate(CostInputs(t=1.0, eps=1e-3, h=coarse))
        b = costmodel.evaluate(CostInputs(t=1.0, eps=1e-3, h=fine))
        assert 8 * 0.85 <= b.direct_gates / a.direct_gates <= 8 * 1.15
        assert 4 * 0.9 <= b.gz_gates / a.gz_gates <= 4 * 1.1
        assert b.classical / a.classical == pytest.approx(8.0)


def test_gaussian_zeno_time_scaling():
    a, _ = costmodel.gaussian_zeno_cost(CostInputs(t=1.0, eps=1e-3, h=1 / 16))
    b, _ = costmodel.gaussian_zeno_cost(CostInputs(t=4.0, eps=1e-3, h=1 / 16))
    assert b / a == pytest.approx(2.0)
    unit, prep = costmodel.gaussian_zeno_cost(CostInputs(t=1.0, eps=1e-3, h=1.0))
    assert unit == pytest.approx(2.0)
    assert prep == pytest.approx(1.0)


def test_classical_cost():
    assert costmodel.classical_cost(CostInputs(t=1.0, eps=1e-3, h=0.5, d=2)) == pytest.approx(8.0)
    assert costmodel.classical_cost(CostInputs(t=1.0, eps=1e-3, h=0.5, d=3)) == pytest.approx(16.0)
    assert costmodel.classical_cost(CostInputs(t=2.0, eps=1e-3, h=0.5)) == pytest.approx(16.0)
    with pytest.raises(ParameterError):
        costmodel.classical_cost(CostInputs(t=1.0, eps=1e-3, h=0.5, d=4))


def test_quantum_to_classical_ratio():
    def ratio(h, t):
        row = costmodel.evaluate(CostInputs(t=t, eps=1e-3, h=h))
        return row.gz_gates / row.classical

    assert 1.8 <= ratio(1 / 16, 1.0) / ratio(1 / 32, 1.0) <= 2.2
    assert ratio(1 / 16, 1.0) / ratio(1 / 16, 4.0) == pytest.approx(2.0)


def test_costs_are_monotone():
    previous = None
    for h in HS:
        row = costmodel.evaluate(CostInputs(t=1.0, eps=1e-3, h=h))
        if previous is not None:
            assert row.direct_gates >= previous.direct_gates
            assert row.gz_gates >= previous.gz_gates
            assert row.classical >= previous.classical
        previous = row
    loose = costmodel.evaluate(CostInputs(t=1.0, eps=1e-2, h=1 / 16))
    tight = costmodel.evaluate(CostInputs(t=1.0, eps=1e-6, h=1 / 16))
    assert tight.direct_gates >= loose.direct_gates
    short = costmodel.evaluate(CostInputs(t=0.5, eps=1e-3, h=1 / 16))
    long = costmodel.evaluate(CostInputs(t=2.0, eps=1e-3, h=1 / 16))
    assert long.direct_gates >= short.direct_gates
    assert long.gz_gates >= short.gz_gates


def test_error_budget():
    inputs = CostInputs(t=2.0, eps=1e-3, h=1 / 8)
    budget = costmodel.error_budget(inputs)
    p = costmodel.projector_degree(inputs)
    assert budget["eta_H"] == pytest.approx(5e-4)
    assert budget["eta_D"] == pytest.approx(budget["eta_P"] / p)


def test_lchs_queries():
    assert costmodel.lchs_queries(10.0, 4.0) == pytest.approx(20.0)
    with pytest.raises(ParameterError):
        costmodel.lchs_queries(0.0, 1.0)


def test_crossover_verdict_depends_on_chi():
    rows = costmodel.crossover_report([1 / 64], [1.0], chi=1.0)
    assert rows[0].verdict == Verdict.QUANTUM
    rows = costmodel.crossover_report([1 / 64], [1.0], chi=1e3)
    assert rows[0].verdict == Verdict.CLASSICAL


def test_crossover_report_ordering():
    rows = costmodel.crossover_report([1 / 16, 1 / 8], [2.0, 1.0])
    assert [(row.h, row.t) for row in rows] == [(1 / 8, 1.0), (1 / 8, 2.0), (1 / 16, 1.0), (1 / 16, 2.0)]
    assert len(rows[0].model_dump()) == 12
    with pytest.raises(ParameterError):
        costmodel.crossover_report([], [1.0])
