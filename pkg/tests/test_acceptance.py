"""Acceptance suite: runs every shipped correctness criterion at exact
integer tolerance and prints one PASS/FAIL line per criterion."""


from genuskit import acceptance

CRITERIA = {name: runner for name, runner in acceptance.CRITERIA}


def _run(name):
    result = CRITERIA[name]()
    status = "PASS" if result.passed else "FAIL"
    print(
        f"\n{status} {result.name} ({result.elapsed_s:.2f}s): "
        f"expected {result.expected}; got {result.actual}"
    )
    assert result.passed, f"{result.name}: {result.actual}"


def test_criterion_1_pullback_oracle_m_1_to_30():
    _run("pullback-oracle")


def test_criterion_2_atom_table():
    _run("atom-table")


def test_criterion_3_genus_one_catalog():
    _run("genus-one-catalog")


def test_criterion_4_stable_image_characterization():
    _run("stable-image")


def test_criterion_5_small_level_genus_one():
    _run("small-level-genus-one")


def test_criterion_6_bound_and_monotonicity():
    _run("bound-and-monotonicity")


def test_criterion_7_partition_properties():
    _run("partition-properties")


def test_criterion_8_same_genus_classes():
    _run("same-genus-classes")


def test_every_registered_criterion_has_a_test():
    tested = {
        "pullback-oracle",
        "atom-table",
        "genus-one-catalog",
        "stable-image",
        "small-level-genus-one",
        "bound-and-monotonicity",
        "partition-properties",
        "same-genus-classes",
    }
    assert tested == set(CRITERIA)
