"""Shipped example manifolds: link and triangulation JSON files.

Each triangulation file is paired with a surgery presentation of the same
manifold under the matching name, so factorization identities can be checked
across the two descriptions.
"""

import json
from importlib import resources

from ..links import ColoredFramedLink, link_from_json
from ..statesum import GeneralizedTriangulation, triangulation_from_json

TRIANGULATIONS = ("s3_one_tet", "s3_two_tet", "s1xs2", "rp3", "lens_3_1")
LINKS = ("s3_empty", "s3_plus1", "s3_minus1", "s1xs2", "rp3", "lens_3_1",
         "lens_4_1", "lens_5_1", "lens_6_1", "hopf_chain_2_3", "hopf_braid")


def _load(subdir: str, name: str) -> dict:
    ref = resources.files(__package__).joinpath(subdir, name + ".json")
    with ref.open() as fh:
        return json.load(fh)


def load_triangulation(name: str) -> GeneralizedTriangulation:
    return triangulation_from_json(_load("triangulations", name))


def load_link(name: str) -> ColoredFramedLink:
    return link_from_json(_load("links", name))


def triangulation_path(name: str) -> str:
    return str(resources.files(__package__).joinpath(
        "triangulations", name + ".json"))


def link_path(name: str) -> str:
    return str(resources.files(__package__).joinpath("links", name + ".json"))
