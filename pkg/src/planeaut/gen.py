"""Seeded generation of tame automorphisms and valid Ga-actions.

Every generator is a pure function of its :class:`GenConfig`.  Corpora use
one derived seed per item, so item ``i`` does not depend on how many items
were requested.  The stream is ``random.Random``; it is frozen for a release,
and committed JSON corpora are the cross-implementation contract.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import asdict, dataclass, replace

from .auto import AffineFactor, ElementaryFactor, PlaneMap, compose_all
from .field import FieldSpec
from .gaction import ValidatedCoAction, basic_action, conjugate_images, validate
from .poly import Poly2


@dataclass(frozen=True)
class GenConfig:
    seed: int
    field: FieldSpec
    max_factors: int = 3
    max_elementary_degree: int = 2
    max_coefficient_height: int = 3
    affine_probability: float = 0.35
    max_frobenius_level: int = 1
    max_action_degree: int = 10

    def __post_init__(self):
        for name in ("max_factors", "max_elementary_degree", "max_coefficient_height", "max_action_degree"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not 0.0 <= self.affine_probability <= 1.0:
            raise ValueError("affine_probability must lie in [0, 1]")
        if self.max_frobenius_level < 0:
            raise ValueError("max_frobenius_level must be >= 0")

    def derive(self, index: int) -> "GenConfig":
        """Config for item ``index`` of a corpus."""
        digest = hashlib.blake2b(f"{self.seed}:{index}".encode(), digest_size=8).digest()
        return replace(self, seed=int.from_bytes(digest, "big"))

    def to_json(self):
        out = asdict(self)
        out["field"] = self.field.designator()
        return out

    @classmethod
    def from_json(cls, data) -> "GenConfig":
        data = dict(data)
        data["field"] = FieldSpec.parse(data["field"])
        return cls(**data)


def _scalar(rng: random.Random, cfg: GenConfig, nonzero: bool = True):
    spec = cfg.field
    h = cfg.max_coefficient_height
    while True:
        v = spec(rng.randint(-h, h))
        if not (nonzero and v.is_zero()):
            return v


def _univariate(rng, cfg, var: str, min_degree: int) -> Poly2:
    spec = cfg.field
    x = Poly2.var(spec, var)
    d = rng.randint(min_degree, cfg.max_elementary_degree)
    p = (x**d).scale(_scalar(rng, cfg))
    for k in range(d):
        p = p + (x**k).scale(_scalar(rng, cfg, nonzero=False))
    return p


def _elementary(rng, cfg) -> ElementaryFactor:
    target = rng.choice((1, 2))
    other = "x2" if target == 1 else "x1"
    return ElementaryFactor(target, _univariate(rng, cfg, other, min_degree=1))


def _affine(rng, cfg) -> AffineFactor:
    while True:
        m = ((_scalar(rng, cfg, False), _scalar(rng, cfg, False)), (_scalar(rng, cfg, False), _scalar(rng, cfg, False)))
        (a, b), (c, d) = m
        if not (a * d - b * c).is_zero():
            break
    return AffineFactor(m, (_scalar(rng, cfg, False), _scalar(rng, cfg, False)))


def random_factors(cfg: GenConfig, rng: random.Random = None) -> list:
    rng = rng or random.Random(cfg.seed)
    k = rng.randint(1, cfg.max_factors)
    return [
        _affine(rng, cfg) if rng.random() < cfg.affine_probability else _elementary(rng, cfg)
        for _ in range(k)
    ]


def random_tame(cfg: GenConfig, rng: random.Random = None) -> PlaneMap:
    """Composition of 1..max_factors random elementary and affine factors."""
    factors = random_factors(cfg, rng)
    return compose_all(cfg.field, (f.as_map(cfg.field) for f in factors))


def random_p_list(cfg: GenConfig, rng: random.Random) -> list:
    p = cfg.field.characteristic()
    if p == 0:
        exponents = [1]
    else:
        exponents = [p**e for e in range(cfg.max_frobenius_level + 1)]
    chosen = sorted(rng.sample(exponents, rng.randint(1, len(exponents))))
    return [(e, _univariate(rng, cfg, "x1", min_degree=0)) for e in chosen]


def random_action(cfg: GenConfig) -> ValidatedCoAction:
    """A basic (Frobenius-additive) action conjugated by a random tame map.

    Draws are repeated from the same stream until both images have total
    degree (T included) at most ``max_action_degree``: validating (A2)
    substitutes the images into themselves, so its cost grows steeply with
    the degree.
    """
    rng = random.Random(cfg.seed)
    while True:
        sigma = basic_action(cfg.field, random_p_list(cfg, rng))
        phi = random_tame(cfg, rng)
        if sigma.s2.total_deg() * phi.max_degree() ** 2 > cfg.max_action_degree * 4:
            continue  # hopeless without computing anything
        images = conjugate_images(sigma, phi)
        if max(images.s1.total_deg(), images.s2.total_deg()) <= cfg.max_action_degree:
            return validate(images)


def corpus_maps(cfg: GenConfig, n: int) -> list:
    return [random_tame(cfg.derive(i)) for i in range(n)]


def corpus_actions(cfg: GenConfig, n: int) -> list:
    return [random_action(cfg.derive(i)) for i in range(n)]
