from fractions import Fraction
from itertools import combinations

import pytest

from lamination_invariants.angles import ZERO, Angle
from lamination_invariants.atlas import (
    MAIN_CARDIOID,
    AddressEntry,
    Atlas,
    ComponentKind,
    HyperbolicComponent,
    LabelledAddress,
    bulb_root_pair,
    internal_address,
    pair_root_angles,
    satellite_root_pair,
    tune,
    visible,
)
from lamination_invariants.exceptions import AngleError, AtlasError
from lamination_invariants.schemas import AtlasHeader


def a(text: str) -> Angle:
    return Angle.parse(text)


def pair(low: str, high: str):
    return a(low), a(high)


class TestLavaursPairing:
    def test_period_four(self):
        assert pair_root_angles(4)[4] == [
            pair("1/15", "2/15"),
            pair("1/5", "4/15"),
            pair("2/5", "3/5"),
            pair("7/15", "8/15"),
            pair("11/15", "4/5"),
            pair("13/15", "14/15"),
        ]

    def test_small_periods(self):
        pairs = pair_root_angles(3)
        assert pairs[1] == []
        assert pairs[2] == [pair("1/3", "2/3")]
        assert pairs[3] == [pair("1/7", "2/7"), pair("3/7", "4/7"), pair("5/7", "6/7")]

    def test_rejects_zero(self):
        with pytest.raises(AtlasError):
            pair_root_angles(0)


class TestInternalAddress:
    @pytest.mark.parametrize("theta, expected", [
        ("1/3", [1, 2]),
        ("1/7", [1, 3]),
        ("3/7", [1, 2, 3]),
        ("7/15", [1, 2, 3, 4]),
        ("11/31", [1, 2, 5]),
        ("1/5", [1, 3, 4]),
    ])
    def test_periodic(self, theta, expected):
        assert internal_address(a(theta)) == expected

    def test_preperiodic_is_cut_at_the_horizon(self):
        assert internal_address(a("1/4"), horizon=6) == [1, 3, 4, 5, 6]

    def test_zero(self):
        with pytest.raises(AngleError):
            internal_address(ZERO)

    def test_both_root_angles_agree(self, atlas8):
        for component in atlas8:
            if component.is_main_cardioid:
                continue
            low, high = component.root_pair
            assert internal_address(low) == internal_address(high) == component.address.periods


class TestRootPairs:
    @pytest.mark.parametrize("p, q, expected", [
        (1, 2, ("1/3", "2/3")),
        (1, 3, ("1/7", "2/7")),
        (2, 3, ("5/7", "6/7")),
        (1, 4, ("1/15", "2/15")),
        (3, 4, ("13/15", "14/15")),
    ])
    def test_bulbs_of_the_main_cardioid(self, p, q, expected):
        assert bulb_root_pair(p, q) == pair(*expected)

    @pytest.mark.parametrize("p, q", [(2, 4), (0, 2), (3, 3)])
    def test_bulb_rejects_bad_rotation(self, p, q):
        with pytest.raises(AtlasError):
            bulb_root_pair(p, q)

    def test_tuning(self):
        basilica = pair("1/3", "2/3")
        assert tune(basilica, basilica, 2) == pair("6/15", "9/15")
        assert tune(basilica, pair("1/7", "2/7"), 2) == pair("22/63", "25/63")
        assert tune((ZERO, ZERO), pair("1/7", "2/7"), 1) == pair("1/7", "2/7")

    def test_tuning_checks_the_outer_period(self):
        with pytest.raises(AtlasError):
            tune(pair("1/3", "2/3"), pair("1/7", "2/7"), 3)

    def test_satellite_of_the_basilica(self, named):
        assert satellite_root_pair(named["basilica"], Fraction(1, 2)) == named["basilica_bulb"].root_pair


class TestAtlas:
    def test_counts(self, atlas8):
        assert atlas8.counts_per_period() == {1: 1, 2: 1, 3: 3, 4: 6, 5: 15, 6: 27, 7: 63, 8: 120}

    def test_main_cardioid_first(self, atlas5):
        assert atlas5.main_cardioid == MAIN_CARDIOID
        assert str(atlas5.main_cardioid.address) == "1"

    def test_kinds(self, named):
        assert named["basilica"].kind is ComponentKind.SATELLITE
        assert named["rabbit"].rotation == Fraction(1, 3)
        assert named["corabbit"].rotation == Fraction(2, 3)
        assert named["airplane"].kind is ComponentKind.PRIMITIVE
        assert named["airplane"].rotation is None
        assert named["basilica_bulb"].rotation == Fraction(1, 2)

    def test_wakes_nested_or_disjoint(self, atlas8):
        wakes = [c.root_pair for c in atlas8 if not c.is_main_cardioid]
        for (a1, b1), (a2, b2) in combinations(wakes, 2):
            nested = a1 < a2 < b2 < b1 or a2 < a1 < b1 < b2
            disjoint = b1 < a2 or b2 < a1
            assert nested or disjoint

    def test_wake_of_main_cardioid(self):
        with pytest.raises(AtlasError):
            MAIN_CARDIOID.wake()

    def test_visibility(self, named):
        assert visible(named["basilica"], named["airplane"])
        assert visible(named["rabbit"], named["kokopelli"])
        assert not visible(named["airplane"], named["basilica"])
        assert not visible(named["rabbit"], named["corabbit"])

    def test_visibility_needs_two_components(self, named):
        with pytest.raises(AtlasError):
            visible(named["main"], named["rabbit"])
        with pytest.raises(AtlasError):
            visible(named["rabbit"], named["rabbit"])

    def test_ancestors(self, atlas5, named):
        chain = atlas5.ancestors(named["basilica_bulb"])
        assert named["basilica"] in chain and named["basilica_bulb"] in chain
        assert named["rabbit"] not in chain
        assert atlas5.ancestors(named["main"]) == []

    def test_combinatorial_arc(self, atlas5, named):
        periods = [step.period for step in atlas5.combinatorial_arc(named["left"])]
        assert periods == [1, 2, 5]
        assert atlas5.combinatorial_arc(named["main"]) == [named["main"]]

    def test_limbs(self, atlas5, named):
        assert atlas5.limb_of(named["main"], named["rabbit"]) == Fraction(1, 3)
        assert atlas5.limb_of(named["basilica"], named["airplane"]) == Fraction(1, 2)
        assert atlas5.limb_of(named["basilica"], named["left"]) == Fraction(1, 3)
        assert atlas5.limb_of(named["basilica"], named["right"]) == Fraction(2, 3)

    def test_foreign_component(self, atlas3, named):
        with pytest.raises(AtlasError):
            atlas3.ancestors(named["left"])


class TestLabelledAddress:
    @pytest.mark.parametrize("name, text", [
        ("basilica", "1 ->(1/2) 2"),
        ("rabbit", "1 ->(1/3) 3"),
        ("corabbit", "1 ->(2/3) 3"),
        ("airplane", "1 ->(1/2) 2 -> 3"),
        ("kokopelli", "1 ->(1/3) 3 -> 4"),
        ("basilica_bulb", "1 ->(1/2) 2 ->(1/2) 4"),
        ("left", "1 ->(1/2) 2 ->(1/3) 5"),
        ("right", "1 ->(1/2) 2 ->(2/3) 5"),
    ])
    def test_labels(self, named, name, text):
        assert str(named[name].address) == text

    def test_injective_where_unlabelled_is_not(self, atlas8):
        labelled = {str(c.address) for c in atlas8}
        unlabelled = {tuple(c.address.periods) for c in atlas8}
        assert len(labelled) == len(atlas8)
        assert len(unlabelled) < len(atlas8)

    @pytest.mark.parametrize("periods", [[2, 3], [1, 3, 3], [1, 4, 2], []])
    def test_rejects_bad_periods(self, periods):
        with pytest.raises(AtlasError):
            LabelledAddress.unlabelled(periods)

    def test_entries(self, named):
        assert named["left"].address.labels == [None, Fraction(1, 2), Fraction(1, 3)]
        assert named["left"].address.entries[-1] == AddressEntry(5, Fraction(1, 3))


class TestQueries:
    @pytest.mark.parametrize("theta, name", [("3/7", "airplane"), ("4/7", "airplane"), ("2/3", "basilica")])
    def test_by_root_angle(self, atlas5, named, theta, name):
        assert atlas5.query_by_angle(a(theta)) == named[name]

    @pytest.mark.parametrize("theta", ["1/5", "1/4"])
    def test_by_root_angle_misses(self, atlas3, theta):
        with pytest.raises(AtlasError):
            atlas3.query_by_angle(a(theta))

    @pytest.mark.parametrize("theta, root", [("1/2", "3/7"), ("1/3", "1/3"), ("0", None), ("1/9", None)])
    def test_enclosing(self, atlas3, theta, root):
        found = atlas3.query_by_angle(a(theta), enclosing=True)
        if root is None:
            assert found.is_main_cardioid
        else:
            assert found.root_pair[0] == a(root)

    def test_by_periods(self, atlas5, named):
        assert atlas5.query_by_address([1, 2, 3]) == [named["airplane"]]
        assert set(atlas5.query_by_address([1, 3])) == {named["rabbit"], named["corabbit"]}

    def test_by_labelled_address(self, atlas5, named):
        assert atlas5.query_by_address(named["corabbit"].address) == [named["corabbit"]]

    @pytest.mark.parametrize("periods", [[1, 6], [2, 3]])
    def test_by_address_misses(self, atlas5, periods):
        with pytest.raises(AtlasError):
            atlas5.query_by_address(periods)


class TestPersistence:
    def test_round_trip(self, atlas5, tmp_path):
        path = atlas5.save(tmp_path / "atlas.ndjson")
        loaded = Atlas.load(path)
        assert loaded == atlas5
        assert loaded.max_period == 5

    def test_component_record_round_trip(self, named):
        for component in named.values():
            assert HyperbolicComponent.from_record(component.to_record()) == component

    def test_missing_file(self, tmp_path):
        with pytest.raises(AtlasError):
            Atlas.load(tmp_path / "absent.ndjson")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.ndjson"
        path.write_text("\n")
        with pytest.raises(AtlasError):
            Atlas.load(path)

    def test_wrong_component_count(self, atlas3, tmp_path):
        path = atlas3.save(tmp_path / "atlas.ndjson")
        lines = path.read_text().splitlines()
        lines[0] = AtlasHeader(max_period=3, component_count=99).model_dump_json()
        path.write_text("\n".join(lines))
        with pytest.raises(AtlasError, match="99"):
            Atlas.load(path)

    def test_malformed_line(self, atlas3, tmp_path):
        path = atlas3.save(tmp_path / "atlas.ndjson")
        path.write_text(path.read_text() + '{"period": 0}\n')
        with pytest.raises(AtlasError):
            Atlas.load(path)
