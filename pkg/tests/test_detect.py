#!/usr/bin/env python3
"""
Detector tests: zig-zags, stabilized components, clasp template parity
"""

import json
import random

import pytest

from detect import (
    PatternKind, TemplateError, arc_cusp_events, find_zigzags, has_fig1_config,
    load_fig1_template, stabilized_component_witnesses, stabilized_components,
    template_from_dict,
)
from front_core import (
    FrontWord, cusp_counts, disjoint_union, left_trefoil, orient, right_trefoil,
    stabilize, standard_unknot, validate,
)
from random_fronts import random_front


def zigzag_pairs(w):
    """Cusp pairs sharing an uncrossed middle strand, traced without front_core"""
    column, acts = [], []
    next_id = 0
    for event in w.events:
        p = event.position
        if event.kind == 'L':
            pair = (next_id, next_id + 1)
            next_id += 2
            column[p - 1:p - 1] = list(pair)
        else:
            pair = (column[p - 1], column[p])
            if event.kind == 'R':
                del column[p - 1:p + 1]
            else:
                column[p - 1], column[p] = column[p], column[p - 1]
        acts.append((event.kind, pair))

    found = set()
    for i, (kind, (upper, lower)) in enumerate(acts):
        if kind != 'L':
            continue
        for j in range(i + 1, len(acts)):
            other, (top, bottom) = acts[j]
            if other != 'R':
                continue
            middle = lower if lower == top else upper if upper == bottom else None
            if middle is None:
                continue
            if any(acts[k][0] == 'X' and middle in acts[k][1] for k in range(i + 1, j)):
                continue
            found.add((i, j))
    return found


def test_standard_unknot_has_no_zigzag():
    assert find_zigzags(standard_unknot()) == []


def test_stabilized_unknot_zigzags():
    witnesses = find_zigzags(FrontWord.from_tokens('L1 L2 R3 R1'))
    assert [w.event_indices for w in witnesses] == [(1, 2), (1, 3)]
    assert all(w.kind == PatternKind.ZIGZAG for w in witnesses)
    assert {w.component for w in witnesses} == {0}


def test_zigzag_ignores_crossings_off_the_middle_strand():
    w = FrontWord.from_tokens('L1 L3 X1 R2 X1 X1 R1')
    witnesses = find_zigzags(w)
    assert [z.event_indices for z in witnesses] == [(1, 3)]
    assert stabilized_components(w) == {0}


def test_crossed_middle_strands_are_not_zigzags():
    assert find_zigzags(right_trefoil()) == []
    assert find_zigzags(left_trefoil()) == []


def test_zigzags_match_an_independent_trace():
    rng = random.Random(2024)
    for _ in range(500):
        w = random_front(rng)
        assert {z.event_indices for z in find_zigzags(w)} == zigzag_pairs(w)


def test_inserted_zigzag_is_always_found():
    rng = random.Random(31)
    for _ in range(100):
        w = random_front(rng)
        components = validate(w)
        c = rng.randrange(components.count)
        birth = components.strand_birth[components.first_strand(c)]
        stabilized = stabilize(w, c, rng.choice([1, -1]))
        found = {(z.event_indices, z.component) for z in find_zigzags(stabilized)}
        assert ((birth + 1, birth + 2), c) in found
        assert c in stabilized_components(stabilized)


def test_stabilized_components_picks_out_the_zigzag():
    w = disjoint_union(standard_unknot(), FrontWord.from_tokens('L1 L2 R3 R1'))
    assert stabilized_components(w) == {1}
    assert stabilized_components(FrontWord()) == set()
    summary = stabilized_component_witnesses(w)
    assert [s.component for s in summary] == [1]
    assert summary[0].kind == PatternKind.STABILIZED_COMPONENT


def test_unknot_has_no_clasp():
    assert has_fig1_config(orient(standard_unknot()), 0) is None


def test_negative_torus_knot_front_has_clasp_with_odd_parity():
    f = orient(left_trefoil())
    witness = has_fig1_config(f, 0)
    assert witness is not None
    assert witness.kind == PatternKind.FIG1_CONFIG
    assert witness.parity_data % 2 == 1
    assert f.word.events[witness.event_indices[0]].kind == 'X'


def test_positive_crossings_give_even_parity():
    assert has_fig1_config(orient(right_trefoil()), 0) is None


def test_clasp_survives_stabilization():
    w = stabilize(left_trefoil(), 0, -1)
    assert has_fig1_config(orient(w), 0) is not None


def test_clasp_parity_agrees_with_directions_and_cusp_totals():
    rng = random.Random(8)
    for _ in range(80):
        f = orient(random_front(rng))
        for c in range(f.components.count):
            witness = has_fig1_config(f, c)
            if witness is None:
                continue
            u, u_prime = witness.strands
            assert witness.parity_data % 2 == 1
            assert f.directions[u] != f.directions[u_prime]
            there = len(arc_cusp_events(f, u, u_prime))
            back = len(arc_cusp_events(f, u_prime, u))
            assert there == witness.parity_data
            assert there + back == sum(cusp_counts(f, c))


def test_detectors_leave_the_word_alone():
    w = left_trefoil()
    before = w.tokens()
    find_zigzags(w)
    has_fig1_config(orient(w), 0)
    assert w.tokens() == before


def test_template_round_trips_through_json(tmp_path):
    path = tmp_path / 'template.json'
    path.write_text(json.dumps({
        'name': 'double-clasp',
        'events': [{'kind': 'X', 'offset': 0}, {'kind': 'X', 'offset': 0}],
        'marked': {'U': {'event': 1, 'strand': 'upper'},
                   'U_prime': {'event': 1, 'strand': 'lower'}},
    }))
    template = load_fig1_template(str(path))
    assert template.name == 'double-clasp'
    assert len(template.events) == 2
    # the right trefoil's clasps are positive, so no odd arc
    assert has_fig1_config(orient(right_trefoil()), 0, template) is None


def test_bad_templates_are_rejected(tmp_path):
    with pytest.raises(TemplateError):
        template_from_dict({'events': []})
    with pytest.raises(TemplateError):
        template_from_dict({'events': [{'kind': 'X'}], 'marked': {'U': {'event': 0, 'strand': 'upper'}}})
    broken = tmp_path / 'broken.json'
    broken.write_text('{not json')
    with pytest.raises(TemplateError):
        load_fig1_template(str(broken))
