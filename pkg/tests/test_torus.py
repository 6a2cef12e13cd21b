import pytest

from azbrane.errors import (
    GeometryMismatch,
    InvalidGeometry,
    InvalidTarget,
    MalformedInput,
    MalformedProfile,
    ZeroClass,
)
from azbrane.services import commands
from azbrane.services import orbit_poset as op
from azbrane.services import torus_abrane as ta
from azbrane.services.scalars import gr

TAU = ta.TorusGeometry("i")


def cls(p, q):
    return ta.HomologyClass(p, q)


def morphism(*components, geometry=TAU, profile=None):
    return ta.AzCircleMorphism(geometry, components, profile)


def random_component(rng):
    klass = cls(rng.randint(-3, 3), rng.randint(-3, 3))
    return ta.Component(rng.randint(1, 3), klass, rng.randint(1, 3), 0, rng.randint(1, 2))


def label(kind, *parts):
    return ta.ProfileLabel(kind, op.OrbitLabel(op.JordanData.single(parts)))


def test_geometry_validation():
    for tau in ("1", "-i", "0"):
        with pytest.raises(InvalidGeometry):
            ta.TorusGeometry(tau)
    assert ta.TorusGeometry("1/2+i").tau == gr("1/2+i")


def test_intersection():
    assert ta.intersection(cls(1, 0), cls(0, 1)) == 1
    assert ta.intersection(cls(0, 1), cls(1, 0)) == -1
    assert ta.intersection(cls(2, 3), cls(4, 6)) == 0
    assert ta.intersection(cls(1, 2), cls(3, 1)) == -5


def test_direction():
    assert ta.direction(cls(2, 4), TAU) == gr("1+2i")
    assert ta.direction(cls(0, -3), ta.TorusGeometry("1/2+i")) == gr("-1/2-i")
    with pytest.raises(ZeroClass):
        ta.direction(cls(0, 0), TAU)


def test_reduce_offset():
    assert ta.reduce_offset("3/2+5/2i", TAU) == gr("1/2+1/2i")
    assert ta.reduce_offset("-1/4", TAU) == gr("3/4")
    skew = ta.TorusGeometry("1/2+i")
    assert ta.reduce_offset("1/2+i", skew) == gr(0)


def test_morphism_offsets_are_reduced_modulo_the_lattice():
    phi = morphism(ta.Component(1, cls(1, 0), offset="5/2+i"), ta.Component(2, cls(0, 0), offset="-1/4"))
    assert [c.offset for c in phi.components] == [gr("1/2"), gr("3/4")]
    assert ta.pushforward_cycle(phi).terms[0].offset == gr("1/2")
    assert ta.pushforward_cycle(phi).point_part == ((gr("3/4"), 2),)


def test_cycle_command_reports_reduced_offsets():
    payload = {"tau": "i", "components": [{"d": 1, "class": [0, 1], "offset": "3/2+2i"}]}
    cycle = commands.execute("torus-cycle", payload)["cycle"]
    assert cycle["terms"] == [{"class": [0, 1], "offset": "1/2", "wraps": 1, "multiplicity": 1}]


def test_component_normalization():
    c = ta.Component(1, cls(2, 4))
    assert (c.klass, c.wrap) == (cls(1, 2), 2)
    c = ta.Component(2, cls(-3, 0), wrap=2, fiber_rank=3)
    assert (c.klass, c.wrap, c.rank) == (cls(-1, 0), 6, 6)
    assert c.surrogate_class() == ta.SurrogateClass(6, -18, 0)
    point = ta.Component(1, cls(0, 0), fiber_rank=2)
    assert (point.klass, point.wrap) == (cls(0, 0), 1)


@pytest.mark.parametrize("d, wrap, fiber_rank", [(0, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_component_validation(d, wrap, fiber_rank):
    with pytest.raises(MalformedInput):
        ta.Component(d, cls(1, 0), wrap, 0, fiber_rank)


def test_class_of_three_parallel_wraps():
    phi = morphism(
        ta.Component(1, cls(1, 0)),
        ta.Component(1, cls(1, 0)),
        ta.Component(2, cls(1, 0)),
    )
    surrogate, projected = ta.total_class(phi)
    assert surrogate == ta.SurrogateClass(4, 3, 0)
    assert projected == cls(3, 0)
    merged = ta.merge_components(phi)
    assert merged.components == (ta.Component(4, cls(1, 0), 3),)


def test_total_class_is_additive(rng):
    for _ in range(500):
        a = morphism(*(random_component(rng) for _ in range(rng.randint(0, 3))))
        b = morphism(*(random_component(rng) for _ in range(rng.randint(0, 3))))
        assert ta.total_class(ta.amalgamate(a, b))[0] == ta.total_class(a)[0] + ta.total_class(b)[0]


def test_amalgamate_geometry_mismatch():
    with pytest.raises(GeometryMismatch):
        ta.amalgamate(morphism(), morphism(geometry=ta.TorusGeometry("2i")))


def test_is_special_lagrangian():
    point = ta.Component(1, cls(0, 0), offset="1/2")
    assert ta.is_special_lagrangian(morphism(ta.Component(1, cls(1, 0)), ta.Component(2, cls(2, 0)), point))
    assert not ta.is_special_lagrangian(morphism(ta.Component(1, cls(1, 0)), ta.Component(1, cls(0, 1))))
    assert not ta.is_special_lagrangian(morphism(ta.Component(1, cls(1, 0)), ta.Component(1, cls(-1, 0))))
    assert ta.is_special_lagrangian(morphism(point))


def test_slag_representative_examples():
    assert ta.slag_representative(ta.SurrogateClass(0, 0, 0), TAU).components == ()
    point = ta.slag_representative(ta.SurrogateClass(3, 0, 0), TAU)
    assert point.components == (ta.Component(1, cls(0, 0), 1, 0, 3),)
    split = ta.slag_representative(ta.SurrogateClass(4, 2, 6), TAU)
    assert split.components == (ta.Component(2, cls(1, 3)),) * 2
    single = ta.slag_representative(ta.SurrogateClass(4, 3, 0), TAU)
    assert single.components == (ta.Component(4, cls(1, 0), 3),)


@pytest.mark.parametrize("target", [ta.SurrogateClass(-1, 0, 0), ta.SurrogateClass(0, 1, 0)])
def test_slag_invalid_targets(target):
    with pytest.raises(InvalidTarget):
        ta.slag_representative(target, TAU)


def test_brane_anti_brane_cancels_to_points(rng):
    for _ in range(50):
        klass = cls(rng.randint(-4, 4), rng.randint(-4, 4))
        if klass.is_zero():
            continue
        d = rng.randint(1, 3)
        result = ta.cancel(morphism(ta.Component(d, klass)), morphism(ta.Component(d, -klass)))
        assert result.components == (ta.Component(1, cls(0, 0), 1, 0, 2 * d),)
        cycle = ta.pushforward_cycle(result)
        assert cycle.terms == ()
        assert cycle.point_part == ((gr(0), 2 * d),)


def test_merge_preserves_cycle_class(rng):
    for _ in range(100):
        phi = morphism(*(random_component(rng) for _ in range(rng.randint(1, 4))))
        merged = ta.merge_components(phi)
        assert ta.is_special_lagrangian(merged)
        assert ta.total_class(merged) == ta.total_class(phi)
        assert ta.pushforward_cycle(merged).equivalent(ta.pushforward_cycle(phi))


def test_pushforward_cycle():
    phi = morphism(
        ta.Component(2, cls(1, 0), 1, "1/2", 3),
        ta.Component(1, cls(0, 0), 1, "i", 2),
    )
    cycle = ta.pushforward_cycle(phi)
    assert cycle.terms == (ta.CycleTerm(cls(1, 0), gr("1/2"), 3, 6),)
    assert cycle.point_part == ((gr("i"), 2),)
    assert cycle.total_class() == cls(3, 0)
    assert cycle.total_rank() == 8


def test_cycle_equivalence_under_splitting():
    wrapped = ta.pushforward_cycle(morphism(ta.Component(2, cls(1, 0), 2)))
    split = ta.pushforward_cycle(morphism(ta.Component(1, cls(1, 0)), ta.Component(1, cls(1, 0))))
    assert wrapped.equivalent(split)
    assert not wrapped.equivalent(ta.pushforward_cycle(morphism(ta.Component(1, cls(2, 0)))))


def test_profile_kinds():
    with pytest.raises(MalformedProfile):
        label("edge", 1)


def test_profile_examples():
    valid = morphism(profile=(label("interval", 2), label("junction", 1, 1)))
    assert ta.validate_profile(valid)
    assert ta.profile_report(valid) == ("complete-flag",)

    too_large = morphism(profile=(label("interval", 1, 1), label("junction", 2)))
    assert not ta.validate_profile(too_large)
    assert ta.profile_report(too_large) == ("unfiltered",)

    mixed = morphism(profile=(
        label("interval", 3), label("junction", 2, 1),
        label("interval", 2, 1), label("junction", 1, 1, 1),
    ))
    assert ta.validate_profile(mixed)
    assert ta.profile_report(mixed) == ("complete-flag", "intermediate")


@pytest.mark.parametrize(
    "profile",
    [
        None,
        (),
        (("interval", 1),),
        (("junction", 1), ("interval", 1)),
    ],
)
def test_malformed_profiles(profile):
    labels = None if profile is None else tuple(label(kind, *parts) for kind, *parts in profile)
    with pytest.raises(MalformedProfile):
        ta.validate_profile(morphism(profile=labels))


def test_random_valid_profiles(rng):
    for _ in range(100):
        n = rng.randint(1, 5)
        choices = list(op.partitions(n))
        intervals = [rng.choice(choices) for _ in range(rng.randint(1, 4))]
        labels = []
        for i, parts in enumerate(intervals):
            following = intervals[(i + 1) % len(intervals)]
            below = [
                j for j in choices
                if op.precede(op.JordanData.single(j), op.JordanData.single(parts))
                and op.precede(op.JordanData.single(j), op.JordanData.single(following))
            ]
            labels += [label("interval", *parts), label("junction", *rng.choice(below))]
        assert ta.validate_profile(morphism(profile=tuple(labels)))
