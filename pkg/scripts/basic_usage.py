"""Walkthrough of the main lamination invariants operations."""

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from lamination_invariants import Angle, Atlas, internal_address, invariant_bundle, realize_portrait  # noqa: E402


def main():
    """Walk through orbits, portraits, the atlas and invariant bundles."""

    print("Lamination Invariants - Walkthrough")
    print("=" * 60)

    for text in ["1/7", "3/7", "11/31", "19/31"]:
        theta = Angle.parse(text)
        print(f"\nAngle {theta}: internal address {internal_address(theta)}")

    portrait = realize_portrait(Angle.parse("3/7"), Angle.parse("4/7"))
    print(f"\nAirplane portrait: {portrait} ({portrait.kind.value})")

    atlas = Atlas.build(5)
    print(f"\nAtlas to period 5: {atlas.counts_per_period()}")

    for text in ["11/31", "19/31"]:
        component = atlas.query_by_angle(Angle.parse(text))
        bundle = invariant_bundle(component, atlas)
        print(f"\n{component}")
        print("-" * 50)
        print(f"labelled address: {bundle.labelled_address}")
        print(f"LU profile: {[record.counts() for record in bundle.lu_profile]}")
        print(f"irregular points: {bundle.irregular_points}")


if __name__ == "__main__":
    main()
