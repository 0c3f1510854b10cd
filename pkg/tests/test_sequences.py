"""The bijection between ordered support tau-rigid objects and signed
tau-exceptional sequences, with golden tables for the two rank-2 examples."""

import pytest

from conftest import item_of
from tauseq.complexes import ext1_dim
from tauseq.errors import DomainError
from tauseq.sequences import (count_sequences, enumerate_ordered,
                              enumerate_sequences, ordered_names, phi, psi,
                              sequence_names, validate_sequence)

# ordered object -> sequence, by display name at the ambient level
GOLDEN_EX1 = {
    ("P2", "P1"): ("P2", "P1"),
    ("S1", "P1"): ("P2[1]", "P1"),
    ("P1", "P2"): ("S1", "P2"),
    ("P1[1]", "P2"): ("S1[1]", "P2"),
    ("P1", "S1"): ("P1", "S1"),
    ("P2[1]", "S1"): ("P1[1]", "S1"),
    ("P2", "P1[1]"): ("P2", "P1[1]"),
    ("P2[1]", "P1[1]"): ("P2[1]", "P1[1]"),
    ("S1", "P2[1]"): ("S1", "P2[1]"),
    ("P1[1]", "P2[1]"): ("S1[1]", "P2[1]"),
}

GOLDEN_EX2 = {
    ("P1", "P2"): ("S1", "P2"),
    ("S2", "P2"): ("S1[1]", "P2"),
    ("P2", "P1"): ("S2", "P1"),
    ("S1", "P1"): ("S2[1]", "P1"),
    ("P2", "S2"): ("I1", "S2"),
    ("P1[1]", "S2"): ("I1[1]", "S2"),
    ("P2[1]", "S1"): ("P1[1]", "S1"),
    ("P1", "S1"): ("P1", "S1"),
    ("S2", "P1[1]"): ("S2", "P1[1]"),
    ("P2[1]", "P1[1]"): ("S2[1]", "P1[1]"),
    ("S1", "P2[1]"): ("S1", "P2[1]"),
    ("P1[1]", "P2[1]"): ("S1[1]", "P2[1]"),
}

EX3_PER_LAST = {
    "S2": 10, "S3": 10, "P1": 10, "P2": 10, "M": 10,
    "P1[1]": 10, "P2[1]": 10, "S3[1]": 10,
    "N": 8, "S1": 8, "I2": 12,
}


def _golden_map(root, t):
    reg = root.registry
    return {tuple(ordered_names(root, tup)): tuple(seq.names(reg))
            for tup, seq in enumerate_sequences(root, t)}


def test_golden_table_ex1(root1):
    assert _golden_map(root1, 2) == GOLDEN_EX1


def test_golden_table_ex2(root2):
    assert _golden_map(root2, 2) == GOLDEN_EX2


def test_counts_ex1_ex2(root1, root2):
    assert count_sequences(root1, 1)[0] == 5
    assert count_sequences(root1, 2)[0] == 10
    assert count_sequences(root2, 1)[0] == 6
    assert count_sequences(root2, 2)[0] == 12
    total, per_last = count_sequences(root1, 2)
    named = {root1.registry.display_item(it): c for it, c in per_last.items()}
    assert named == {"P1": 2, "P2": 2, "S1": 2, "P1[1]": 2, "P2[1]": 2}


def test_counts_ex3(root3):
    assert count_sequences(root3, 1)[0] == 11
    assert count_sequences(root3, 2)[0] == 54
    total, per_last = count_sequences(root3, 3)
    assert total == 108
    named = {root3.registry.display_item(it): c for it, c in per_last.items()}
    assert named == EX3_PER_LAST


def test_worked_rows_ex3(root3, ex3):
    _, alg, mods = ex3
    reg = root3.registry
    row1 = tuple(item_of(root3, mods, n) for n in ("M", "I2", "P1"))
    seq1 = psi(root3, row1)
    assert sequence_names(root3, seq1) == ["S2[1]", "S3[1]", "P1"]
    assert phi(root3, seq1) == row1
    assert phi(root3, seq1.root_pairs()) == row1
    row2 = tuple(item_of(root3, mods, n) for n in ("M", "P1", "I2"))
    seq2 = psi(root3, row2)
    assert sequence_names(root3, seq2) == ["S2[1]", "P1", "I2"]
    assert phi(root3, seq2) == row2
    assert phi(root3, seq2.root_pairs()) == row2


@pytest.mark.parametrize("stem", ["root1", "root2", "root3"])
def test_phi_inverts_psi_everywhere(stem, request):
    root = request.getfixturevalue(stem)
    n = root.gamma.idempotents.shape[0]
    for t in range(1, n + 1):
        for tup, seq in enumerate_sequences(root, t):
            assert phi(root, seq) == tup
            assert phi(root, seq.root_pairs()) == tup


@pytest.mark.parametrize("stem", ["root1", "root2", "root3"])
def test_every_generated_sequence_validates(stem, request):
    root = request.getfixturevalue(stem)
    n = root.gamma.idempotents.shape[0]
    for t in range(1, n + 1):
        for tup, seq in enumerate_sequences(root, t):
            ok, why = validate_sequence(root, seq.root_pairs())
            assert ok, (tup, why)


@pytest.mark.parametrize(
    "stem,exname,count",
    [("root1", "ex1", 10), ("root2", "ex2", 12)])
def test_valid_sequences_are_exactly_the_images(stem, exname, count,
                                                request):
    # brute force over all pairs of (indecomposable, shift) entries: the
    # candidates accepted by the independent validator are whole image of
    # the enumeration, nothing more
    root = request.getfixturevalue(stem)
    _, alg, mods = request.getfixturevalue(exname)
    pool = [(m, False) for m in mods.values()]
    pool += [(m, True) for m in mods.values()]
    valid = set()
    for a in pool:
        for b in pool:
            ok, _ = validate_sequence(root, [a, b])
            if ok:
                names = []
                for m, sh in (a, b):
                    nm = root.registry.name(root.registry.ensure(m))
                    names.append(nm + "[1]" if sh else nm)
                valid.add(tuple(names))
    images = {tuple(seq.names(root.registry))
              for _, seq in enumerate_sequences(root, 2)}
    assert valid == images
    assert len(valid) == count


def test_entries_have_no_self_extensions(root3):
    # every realized entry is exceptional over the ambient algebra
    seen = {}
    for t in (1, 2, 3):
        for _, seq in enumerate_sequences(root3, t):
            for m, _ in seq.root_pairs():
                key = root3.registry.ensure(m)
                if key not in seen:
                    seen[key] = ext1_dim(m, m)
                assert seen[key] == 0


def test_validation_diagnoses_bad_pairs(root2, ex2):
    _, alg, mods = ex2
    ok, why = validate_sequence(root2, [(mods["I1"], False),
                                        (mods["P2"], False)])
    assert not ok and why.startswith("entry 1")
    ok, why = validate_sequence(root2, [(mods["P2"], False),
                                        (mods["I1"], False)])
    assert not ok and "not tau-rigid" in why
    ok, why = validate_sequence(root2, [(mods["P1"], False),
                                        (mods["S2"], True)])
    assert not ok and "projective" in why and why.startswith("entry 2")
    too_long = [(mods["P1"], False)] * 3
    ok, why = validate_sequence(root2, too_long)
    assert not ok and "length" in why


def test_psi_input_validation(root2, root3, ex2, ex3):
    _, _, mods2 = ex2
    _, _, mods3 = ex3
    i1 = root2.registry.find(mods2["I1"])
    assert i1 is not None
    with pytest.raises(DomainError):
        psi(root2, [("m", i1)])
    p1 = item_of(root3, mods3, "P1")
    with pytest.raises(DomainError):
        psi(root3, [p1, p1])
    with pytest.raises(DomainError):
        psi(root3, [])
    four = [item_of(root3, mods3, n) for n in ("S2", "P2", "P1", "M")]
    with pytest.raises(DomainError):
        psi(root3, four)
    # S3 + S2 is not support tau-rigid, so no ordered object contains both
    with pytest.raises(DomainError):
        psi(root3, [item_of(root3, mods3, "S3"), item_of(root3, mods3, "S2")])
    with pytest.raises(DomainError):
        enumerate_ordered(root3, 0)
