"""Loader for the embedded tables (group actions, seed relations, line, Z1 and C equations).

Every file is checked against a SHA-256 manifest on load, so a stray edit
to the transcribed data fails loudly instead of producing wrong geometry.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..algebra.eqfile import equations_from_json, frame_from_json, poly_from_json
from ..algebra.gaussian import GaussianRational
from ..algebra.poly import SparsePolynomial, VariableFrame
from ..errors import DatasetCorrupt
from ..grouprep.matrices import MatrixRepresentation, exact_matmul

MANIFEST = {
    "action_g_xy.json": "1d898f759c6bf4781ce9150acf7018f9e6489cf194f8acd722eb67f4d046ff36",
    "action_g21_xy.json": "a4b3b26834121c7dc44ca737c46cb8cce516903fb51236cde1a5789d051c304a",
    "action_g_z.json": "7227faf8d746430c42b69e9f7332d94ca02e99a1e227a36a4d24f76f1c88f981",
    "action_g21_z.json": "4e5753e370165429ec454129677409569738edaeba39a6220519066b4ef0a00d",
    "seeds_z3.json": "9a774a179a14f3b0a87c7b74055f76c918fce65b2d54cf57ca49bd6c4a32b446",
    "h_form.json": "4ecb93f20cc3c8e07bcce652ee4bba7bc81c618d9ed3e6ab2784b84fa833041c",
    "seed_line.json": "8b8c9615758c2da86678c0a4ddf201a1e9d05207c9cda3350bc930dceb3dc37f",
    "z1_equations.json": "980d93a03082643113a9b1cc8d04cb812e9bad6dc03f0eb3a6ecd631c0a956be",
    "curve_c_equations.json": "02aa88848fcf602a506c86f5585c44c194ec47757093b8166ac8eee5d84d6789",
}


def _raw(name: str) -> bytes:
    return resources.files("ballq.surface").joinpath("data", name).read_bytes()


def file_hashes() -> dict:
    return {name: hashlib.sha256(_raw(name)).hexdigest() for name in MANIFEST}


def verify_manifest() -> None:
    """Raise DatasetCorrupt unless every embedded file matches its pinned hash."""
    for name, digest in file_hashes().items():
        if MANIFEST[name] is not None and digest != MANIFEST[name]:
            raise DatasetCorrupt(f"{name} does not match its pinned SHA-256")


def _load(name: str) -> dict:
    if name not in MANIFEST:
        raise DatasetCorrupt(f"unknown dataset file {name}")
    data = _raw(name)
    pinned = MANIFEST[name]
    if pinned is not None and hashlib.sha256(data).hexdigest() != pinned:
        raise DatasetCorrupt(f"{name} does not match its pinned SHA-256")
    return json.loads(data)


def _load_action(name: str, label: str) -> MatrixRepresentation:
    obj = _load(name)
    fr = frame_from_json(obj)
    tables = [[poly_from_json(t, fr) for t in gen] for gen in obj["generators"]]
    return MatrixRepresentation.from_images(fr, tables, label, layout="rows")


@dataclass(frozen=True)
class ProjectiveLineData:
    A: tuple  # coefficient of u
    B: tuple  # coefficient of v


@dataclass
class SurfaceDataset:
    g_xy: MatrixRepresentation
    g21_xy: MatrixRepresentation
    g_z: MatrixRepresentation
    g21_z: MatrixRepresentation
    seeds: list
    h_form: SparsePolynomial
    line: ProjectiveLineData
    z1_frame: VariableFrame
    z1_equations: list
    c_frame: VariableFrame
    c_equations: list

    @property
    def xy_frame(self) -> VariableFrame:
        return self.g_xy.frame

    def g_full(self) -> MatrixRepresentation:
        """The 27-variable action on (x, y, z)."""
        return self.g_xy.direct_sum(self.g_z, "G on xyz")

    def g21_z_consistent(self) -> MatrixRepresentation:
        """G21 on z with the order-3 generator realized by the same element of G as on xy.

        The printed z-image of that generator is the element b*a (a the
        order-7 generator), so it is multiplied by a^-1 here.
        """
        za, zb = self.g21_z.generators
        a_inv = za
        for _ in range(5):
            a_inv = exact_matmul(a_inv, za)
        return MatrixRepresentation(self.g21_z.frame, [za, exact_matmul(zb, a_inv)], "G21 on z (consistent)")

    def g21_full(self, printed: bool = False) -> MatrixRepresentation:
        """G21 on all 27 variables; by default with the consistent z-generator."""
        z = self.g21_z if printed else self.g21_z_consistent()
        return self.g21_xy.direct_sum(z, "G21 on xyz")

    def block(self, prefix: str, which: str = "g") -> MatrixRepresentation:
        """Coordinate block 'x', 'y' or 'z' of the G (or G21) action."""
        if prefix == "z":
            return self.g_z if which == "g" else self.g21_z
        rep = self.g_xy if which == "g" else self.g21_xy
        return rep.restrict([v for v in rep.frame.names if v.startswith(prefix)], f"{which}:{prefix}")


def _line(obj) -> ProjectiveLineData:
    fr, forms = equations_from_json(obj)
    zero = GaussianRational(0)
    u = tuple(f.terms.get((1, 0), zero) for f in forms)
    v = tuple(f.terms.get((0, 1), zero) for f in forms)
    return ProjectiveLineData(u, v)


@lru_cache(maxsize=1)
def load_dataset() -> SurfaceDataset:
    _, seeds = equations_from_json(_load("seeds_z3.json"))
    _, (h,) = equations_from_json(_load("h_form.json"))
    zfr, zeq = equations_from_json(_load("z1_equations.json"))
    cfr, ceq = equations_from_json(_load("curve_c_equations.json"))
    return SurfaceDataset(
        g_xy=_load_action("action_g_xy.json", "G on xy"),
        g21_xy=_load_action("action_g21_xy.json", "G21 on xy"),
        g_z=_load_action("action_g_z.json", "G on z"),
        g21_z=_load_action("action_g21_z.json", "G21 on z"),
        seeds=seeds, h_form=h, line=_line(_load("seed_line.json")),
        z1_frame=zfr, z1_equations=zeq, c_frame=cfr, c_equations=ceq,
    )
