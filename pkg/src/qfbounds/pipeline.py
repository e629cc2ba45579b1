"""End-to-end orchestration: from a signature (3,1) form to invariants,
complement, exact isometry, arithmetic index bounds, and the geodesic
residual-finiteness growth constant, with machine-readable reports.

Two worked reference inputs ship as presets.  Each preset carries the
published complementary form and isometry matrix as frozen fixtures,
verified exactly at run time, together with the published headline
numbers.  Where our computed values disagree with published prose the
report keeps both and flags the disagreement as a structured warning;
warnings never silence the computation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from . import arithmetic, geometry
from .arithmetic import (
    ImagQuadField,
    c2_bound,
    c_eps_bound,
    c_prime_eps,
    field_from_form,
    generic_S_rf_bound,
    quaternion_from_form,
    ram_norms,
    sharp_S_enumeration,
    total_index_bound,
)
from .complement import complementary_form, verify_complement
from .forms import DiagForm, invariant_profile, is_isotropic_Q, standard_lorentzian
from .isometry import full_isometry_to_standard, verify_isometry

Q61 = standard_lorentzian(6)


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class PipelineConfig:
    """Tunable constants and assertions; defaults are the documented ones.

    A and A1 are the two absolute constants of the underlying
    effectivity results, not pinned numerically by the source; bounds
    that depend on them say so.  assume_rf replaces the computed
    finite-ramification count in the bound stage (the computed value is
    still reported, with a warning).  type_number_one asserts one
    conjugacy class of maximal orders, making C2 = 1.
    """

    A: float = 1.0
    A1: float = 1.0
    deg_kA: int = 1
    type_number_one: bool = False
    assume_rf: int | None = None
    precision: int = 50
    rmax_mode: str = "paper_h6"

    @classmethod
    def from_file(cls, path: str) -> "PipelineConfig":
        values = {}
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError("config line %r is not key = value" % raw.strip())
                key, val = (part.strip() for part in line.split("=", 1))
                values[key] = val
        return cls.from_mapping(values)

    @classmethod
    def from_mapping(cls, values: dict) -> "PipelineConfig":
        kwargs = {}
        casts = {
            "A": float,
            "A1": float,
            "deg_kA": int,
            "type_number_one": lambda s: str(s).lower() in ("1", "true", "yes"),
            "assume_rf": int,
            "precision": int,
            "rmax_mode": str,
        }
        for key, val in values.items():
            if key not in casts:
                raise ValueError("unknown config key %r" % key)
            kwargs[key] = casts[key](val)
        return cls(**kwargs)

    def to_json(self) -> dict:
        return {
            "A": self.A,
            "A1": self.A1,
            "deg_kA": self.deg_kA,
            "type_number_one": self.type_number_one,
            "assume_rf": self.assume_rf,
            "precision": self.precision,
            "rmax_mode": self.rmax_mode,
        }


# ---------------------------------------------------------------------------
# presets: the two worked reference inputs


def _frac_rows(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


_M306_P = _frac_rows(
    [
        ["1/5", "0", "-3/10", "3/4", "0", "1/10", "9/20"],
        ["-1/5", "0", "0", "0", "0", "2/5", "0"],
        ["0", "0", "-9/20", "9/40", "11/20", "0", "27/40"],
        ["0", "1", "0", "0", "0", "0", "0"],
        ["-3/5", "0", "-1/10", "1/4", "0", "-3/10", "3/20"],
        ["0", "0", "-3/5", "0", "0", "0", "2/5"],
        ["0", "0", "-11/20", "11/40", "9/20", "0", "33/40"],
    ]
)

_EX1_P = _frac_rows(
    [
        ["1", "0", "0", "0", "0", "0", "0"],
        ["0", "1", "0", "0", "0", "0", "0"],
        ["0", "0", "4/7", "0", "0", "0", "3/7"],
        ["0", "0", "0", "1", "0", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0"],
        ["0", "0", "0", "0", "0", "1", "0"],
        ["0", "0", "-3/7", "0", "0", "0", "-4/7"],
    ]
)


@dataclass(frozen=True)
class Preset:
    name: str
    q: DiagForm
    published_qc: DiagForm
    published_P: tuple
    published_S: int
    eps: float
    V: float | None  # None: V enters symbolically (eps-mode coefficient)
    config: PipelineConfig
    published_total_log10: float | None
    published_K_log10: float | None
    notes: tuple = ()

    @property
    def published_source(self) -> DiagForm:
        return self.published_qc.direct_sum(self.q)


def _catalan_volume() -> float:
    with mp.workdps(30):
        return float(4 * mp.catalan)


PRESETS = {
    "m306": Preset(
        name="m306",
        q=DiagForm.parse("1,2,5,-10"),
        published_qc=DiagForm.parse("2,5,10"),
        published_P=_M306_P,
        published_S=40,
        eps=1.0,
        V=_catalan_volume(),
        config=PipelineConfig(type_number_one=True),
        published_total_log10=math.log10(16) + 42 * math.log10(1600),
        published_K_log10=math.log10(7) + 150,
        notes=(
            "closed census manifold; volume 4*Catalan",
            "published headline index bound 16*1600^42",
        ),
    ),
    "bianchi7": Preset(
        name="bianchi7",
        q=DiagForm.parse("1,1,1,-7"),
        published_qc=DiagForm.parse("1,1,7"),
        published_P=_EX1_P,
        published_S=7,
        eps=0.5,
        V=None,
        config=PipelineConfig(type_number_one=True, assume_rf=0),
        published_total_log10=None,  # 8 * 49^42 * V^(1/2); V stays symbolic
        published_K_log10=None,
        notes=(
            "published coefficient 8 multiplying V^(1/2); D <= 49^42",
            "published treatment: matrix algebra, r_f = 0, noncocompact",
        ),
    ),
}


# ---------------------------------------------------------------------------
# report


@dataclass
class PipelineReport:
    input: dict
    invariants: dict
    field: dict
    quaternion: dict
    complement: dict
    isometry: dict
    bounds: dict
    geometry: dict | None
    K: dict | None
    preset: dict | None
    config: dict
    warnings: list

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "invariants": self.invariants,
            "field": self.field,
            "quaternion": self.quaternion,
            "complement": self.complement,
            "isometry": self.isometry,
            "bounds": self.bounds,
            "geometry": self.geometry,
            "K": self.K,
            "preset": self.preset,
            "config": self.config,
            "warnings": self.warnings,
        }

    def json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": [
        "input",
        "invariants",
        "field",
        "quaternion",
        "complement",
        "isometry",
        "bounds",
        "config",
        "warnings",
    ],
    "properties": {
        "input": {
            "type": "object",
            "required": ["form", "eps"],
            "properties": {
                "form": {"type": "string"},
                "eps": {"type": "number"},
                "V": {"type": ["number", "null"]},
            },
        },
        "invariants": {
            "type": "object",
            "required": ["rank", "signature", "disc_class", "hasse_witt", "is_isotropic", "cocompact"],
            "properties": {
                "rank": {"type": "integer"},
                "signature": {"type": "array", "items": {"type": "integer"}},
                "disc_class": {"type": "integer"},
                "hasse_witt": {"type": "object", "additionalProperties": {"enum": [1, -1]}},
                "nontrivial_places": {"type": "array"},
                "is_isotropic": {"type": "boolean"},
                "cocompact": {"type": "boolean"},
            },
        },
        "field": {"type": "object", "required": ["d", "disc", "d_k", "h_k", "omega_dk"]},
        "quaternion": {"type": "object", "required": ["a", "b", "ram_f", "r_f"]},
        "complement": {"type": "object", "required": ["qc", "c", "x", "d", "verified"]},
        "isometry": {
            "type": "object",
            "required": ["P", "source", "target", "S", "log10_D_S42", "log10_D_level42"],
        },
        "bounds": {
            "type": "object",
            "required": ["c_prime_eps", "c_eps", "c2", "total"],
            "properties": {
                "c_prime_eps": {"type": "number"},
                "c_eps": {"$ref": "#/definitions/bound"},
                "c2": {"$ref": "#/definitions/bound"},
                "sharp": {"type": ["object", "null"]},
                "generic_S_rf": {"type": ["number", "null"]},
                "total": {"$ref": "#/definitions/bound"},
                "total_sharp": {"oneOf": [{"$ref": "#/definitions/bound"}, {"type": "null"}]},
            },
        },
        "geometry": {"type": ["object", "null"]},
        "K": {"type": ["object", "null"]},
        "preset": {"type": ["object", "null"]},
        "config": {"type": "object"},
        "warnings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["code", "message"],
                "properties": {"code": {"type": "string"}, "message": {"type": "string"}},
            },
        },
    },
    "definitions": {
        "bound": {
            "type": "object",
            "required": ["log10", "human", "provenance"],
            "properties": {
                "log10": {"type": "number"},
                "parameterized_by": {"type": "array", "items": {"type": "string"}},
                "human": {"type": "string"},
                "provenance": {
                    "enum": ["computed", "parameterized (A, A1)", "paper-preset"]
                },
            },
        }
    },
}


def _bound_json(bv, provenance: str | None = None) -> dict:
    out = bv.to_json()
    if provenance is None:
        provenance = "parameterized (A, A1)" if bv.parameterized_by else "computed"
    out["provenance"] = provenance
    return out


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise ValueError("[%s] %s" % (name, exc)) from exc


# ---------------------------------------------------------------------------
# pipeline


def run_pipeline(
    q: DiagForm,
    eps: float,
    V: float | None = None,
    config: PipelineConfig | None = None,
    _preset: Preset | None = None,
) -> PipelineReport:
    """invariants -> field/quaternion -> complement -> isometry ->
    bounds -> (geometry and K when V is given).  Deterministic."""
    cfg = config or PipelineConfig()
    warnings = []

    profile = _stage("invariants", invariant_profile, q)
    isotropic = _stage("invariants", is_isotropic_Q, q)
    if q.signature != (3, 1):
        raise ValueError("[invariants] expected signature (3,1), got %s" % (q.signature,))
    inv_json = profile.to_json()
    inv_json["nontrivial_places"] = sorted(
        (p for p, v in profile.hasse_witt.items() if v == -1 and p != float("inf")),
        key=lambda p: (isinstance(p, float), p),
    )
    inv_json["nontrivial_places"] = [
        ("inf" if isinstance(p, float) else p) for p in inv_json["nontrivial_places"]
    ]
    inv_json["is_isotropic"] = isotropic
    inv_json["cocompact"] = not isotropic

    d_raw, K = _stage("field", field_from_form, q)
    algebra = _stage("field", quaternion_from_form, q)
    computed_norms = ram_norms(algebra)
    r_f_used = algebra.r_f
    norms_used = computed_norms
    if cfg.assume_rf is not None and cfg.assume_rf != algebra.r_f:
        r_f_used = cfg.assume_rf
        norms_used = computed_norms[: cfg.assume_rf]
        warnings.append(
            {
                "code": "ramification-override",
                "message": "configured r_f=%d replaces computed r_f=%d (norms %s) in the bound stage"
                % (cfg.assume_rf, algebra.r_f, computed_norms),
                "computed": algebra.r_f,
                "configured": cfg.assume_rf,
            }
        )

    witness = _stage("complement", complementary_form, q)
    if not verify_complement(q, witness.qc):
        raise RuntimeError("[complement] constructed complement failed verification")
    comp_json = witness.to_json()
    comp_json["verified"] = True

    g7 = witness.qc.direct_sum(q)
    iso = _stage("isometry", full_isometry_to_standard, g7)
    iso_json = iso.to_json()

    bounds_json, sharp = _bounds_stage(K, norms_used, r_f_used, eps, V, cfg, iso, warnings)

    geom_json = None
    k_json = None
    if V is not None:
        geom_json, k_json = _k_stage(eps, V, cfg, iso, sharp, bounds_json, _preset)

    preset_json = None
    if _preset is not None:
        preset_json = _preset_block(_preset, eps, V, warnings, k_json)

    return PipelineReport(
        input={"form": str(q), "eps": eps, "V": V},
        invariants=inv_json,
        field=K.to_json(),
        quaternion=algebra.to_json(),
        complement=comp_json,
        isometry=iso_json,
        bounds=bounds_json,
        geometry=geom_json,
        K=k_json,
        preset=preset_json,
        config=cfg.to_json(),
        warnings=warnings,
    )


def _bounds_stage(K, norms_used, r_f_used, eps, V, cfg, iso, warnings):
    cpe = _stage("bounds", c_prime_eps, eps)
    ce = c_eps_bound(K, eps, cfg.A1)
    c2 = c2_bound(K, cfg.type_number_one, cfg.A1)
    sharp = None
    if V is not None:
        sharp = _stage(
            "bounds", sharp_S_enumeration, K, list(norms_used), V=V, deg_kA=cfg.deg_kA
        )
    else:
        try:
            sharp = sharp_S_enumeration(K, list(norms_used), eps=eps, deg_kA=cfg.deg_kA)
        except ValueError as exc:
            warnings.append(
                {
                    "code": "sharp-eps-unavailable",
                    "message": str(exc),
                }
            )
    # the sharp enumeration consumes the (possibly overridden) r_f
    if sharp is not None and sharp.r_f != r_f_used:
        sharp = replace(
            sharp,
            r_f=r_f_used,
            coefficient=(
                2.0 ** ((sharp.max_S_size or 0) + r_f_used + 1) * cfg.deg_kA
                if sharp.mode == "V"
                else 2.0 ** (r_f_used + 3) * cfg.deg_kA
            ),
        )
    log10_D = iso.log10_D_level42
    total = total_index_bound(ce.log10, log10_D, eps, V if V is not None else 1.0)
    total_json = _bound_json(total, "parameterized (A, A1)")
    total_sharp_json = None
    if sharp is not None:
        ts = total_index_bound(ce.log10, log10_D, eps, V if V is not None else 1.0, sharp=sharp)
        total_sharp_json = _bound_json(ts, "computed")
        if sharp.mode == "eps" and V is None:
            total_sharp_json["human"] += " * V^%g (V symbolic)" % eps
    bounds_json = {
        "c_prime_eps": cpe,
        "c_eps": _bound_json(ce),
        "c2": _bound_json(c2, "computed" if cfg.type_number_one else None),
        "sharp": sharp.to_json() if sharp is not None else None,
        "generic_S_rf": generic_S_rf_bound(eps, V) if V is not None else None,
        "r_f_used": r_f_used,
        "log10_D_used": log10_D,
        "total": total_json,
        "total_sharp": total_sharp_json,
    }
    return bounds_json, sharp


def _k_stage(eps, V, cfg, iso, sharp, bounds_json, preset):
    consts = geometry.p6_constants()
    geom_json = consts.to_json()
    if sharp is not None and sharp.mode == "V":
        log10_C = math.log10(sharp.coefficient)
        c_label = "sharp coefficient"
    else:
        log10_C = bounds_json["c_eps"]["log10"]
        c_label = "C_eps (parameterized)"
    if preset is not None and preset.published_total_log10 is not None:
        log10_CD = preset.published_total_log10
        cd_label = "paper-preset C*D"
        kr = geometry.effective_K(V, eps, 0.0, log10_CD, mode=cfg.rmax_mode)
        kr_disp = geometry.effective_K(
            V, eps, 0.0, log10_CD, mode=cfg.rmax_mode, include_vol_eps=False
        )
    else:
        log10_D = iso.log10_D_level42
        cd_label = c_label + " * D(level42)"
        kr = geometry.effective_K(V, eps, log10_C, log10_D, mode=cfg.rmax_mode)
        kr_disp = geometry.effective_K(
            V, eps, log10_C, log10_D, mode=cfg.rmax_mode, include_vol_eps=False
        )
    k_json = {
        "log10_K": float(kr["log10_K"]),
        "log10_K_str": mpmath.nstr(kr["log10_K"], 20),
        "log10_K_display_variant": float(kr_disp["log10_K"]),
        "h_max": mpmath.nstr(kr["h_max"], 20),
        "cosh_r_max": mpmath.nstr(kr["cosh_r_max"], 20),
        "sinh_argument": mpmath.nstr(kr["sinh_argument"], 20),
        "mode": kr["mode"],
        "C_D_source": cd_label,
        "provenance": "computed",
    }
    return geom_json, k_json


def _preset_block(preset, eps, V, warnings, k_json):
    src = preset.published_source
    p_ok = verify_isometry(preset.published_P, src, Q61)
    qc_ok = verify_complement(preset.q, preset.published_qc)
    out = {
        "name": preset.name,
        "published_qc": str(preset.published_qc),
        "published_qc_verified": qc_ok,
        "published_P_verified": p_ok,
        "published_S": preset.published_S,
        "published_log10_D_level42": 84.0 * math.log10(preset.published_S),
        "published_total_log10": preset.published_total_log10,
        "published_K_log10": preset.published_K_log10,
        "notes": list(preset.notes),
        "provenance": "paper-preset",
    }
    if preset.name == "m306" and k_json is not None and preset.published_K_log10 is not None:
        warnings.append(
            {
                "code": "k-magnitude-paper-discrepancy",
                "message": "computed log10 K = %.6f; published quote is ~%.3f "
                "(approximately 7*10^150); the computation follows the printed formula"
                % (k_json["log10_K"], preset.published_K_log10),
                "computed": k_json["log10_K"],
                "paper": preset.published_K_log10,
            }
        )
    if preset.name == "bianchi7":
        warnings.append(
            {
                "code": "isotropy-paper-discrepancy",
                "message": "computed isotropy over Q is false (anisotropic at 2, where the "
                "discriminant is a square); the published treatment works with the "
                "noncocompact Bianchi-style group",
                "computed": False,
                "paper": True,
            }
        )
    return out


def run_preset(name: str, V: float | None = None, config: PipelineConfig | None = None) -> PipelineReport:
    if name not in PRESETS:
        raise ValueError("unknown preset %r; available: %s" % (name, sorted(PRESETS)))
    preset = PRESETS[name]
    cfg = config or preset.config
    vol = V if V is not None else preset.V
    return run_pipeline(preset.q, preset.eps, vol, cfg, _preset=preset)


# ---------------------------------------------------------------------------
# published-fixture corpus


def _check(name, ok, details, info=False):
    status = "info" if info else ("pass" if ok else "fail")
    return {"name": name, "status": status, "details": details}


def verify_paper_corpus() -> list:
    """Every published fixture, re-verified; discrepancies are 'info'."""
    out = []
    m306, ex1 = PRESETS["m306"], PRESETS["bianchi7"]

    ok = verify_isometry(ex1.published_P, ex1.published_source, Q61)
    out.append(_check("ex1-published-isometry-exact", ok, "P maps <1,1,7,1,1,1,-7> to q_{6,1}"))
    ok = verify_isometry(m306.published_P, m306.published_source, Q61)
    out.append(_check("m306-published-isometry-exact", ok, "P maps <2,5,10,1,2,5,-10> to q_{6,1}"))

    prof = invariant_profile(m306.q)
    bad = sorted(p for p, v in prof.hasse_witt.items() if v == -1)
    out.append(
        _check("m306-hasse-witt-places", bad == [2, 5], "nontrivial exactly at {2,5}: got %s" % bad)
    )

    with mp.workdps(40):
        zi = arithmetic.zeta_k_2(ImagQuadField.from_d(1), 1e-13)
        lhs = float(mp.pi ** 2 * (4 * mp.catalan) / (4 * zi))
    out.append(
        _check("zeta-Qi-identity", abs(lhs - 6) < 1e-9, "pi^2*(4*Catalan)/(4*zeta_k(2)) = %.12f" % lhs)
    )

    alg = quaternion_from_form(m306.q)
    out.append(
        _check("m306-ram-norms", ram_norms(alg) == [5, 5], "two primes of norm 5: got %s" % ram_norms(alg))
    )
    alg1 = quaternion_from_form(ex1.q)
    out.append(
        _check(
            "ex1-ram-norms",
            False,
            "computed %s (two split primes of norm 2); published r_f = 0 (matrix algebra)"
            % ram_norms(alg1),
            info=True,
        )
    )
    out.append(
        _check(
            "ex1-isotropy",
            False,
            "computed anisotropic over Q; published treatment is the noncocompact one",
            info=True,
        )
    )

    sx = geometry.CoxeterSimplex.p6()
    with mp.workdps(40):
        MA, MC = mpmath.matrix(sx.gram), mpmath.matrix(sx.factor)
        J = mpmath.diag([1] * 6 + [-1])
        res = MC.T * MA * MC - J
        fr = max(abs(res[i, j]) for i in range(7) for j in range(7))
        out.append(_check("factor-identity", fr < mpf("1e-12"), "||C^t A C - J||_inf = %s" % mpmath.nstr(fr, 3)))
        nd = _display_matrix_residual(sx)
        out.append(
            _check(
                "displayed-triangular-matrix",
                nd < mpf("1e-12"),
                "printed matrix reproduced as N = C^{-1} (columns = unit normals, N^t J N = A); "
                "max entry error %s" % mpmath.nstr(nd, 3),
            )
        )
        vd = _vertex_residual(sx)
        out.append(_check("vertex-list", vd < mpf("1e-12"), "all seven vertices; max error %s" % mpmath.nstr(vd, 3)))
        x1, x2, x3, x7 = sx.vertices[0], sx.vertices[1], sx.vertices[2], sx.vertices[6]
        e = abs(geometry.lorentz_product(x2, x3) + mpmath.sqrt(2))
        out.append(_check("x2-x3-product", e < mpf("1e-12"), "x2.x3 = -sqrt(2) within %s" % mpmath.nstr(e, 3)))
        e = abs(geometry.lorentz_product(x7, x3) + mpmath.sqrt(3))
        out.append(_check("x7-x3-product", e < mpf("1e-12"), "x7.x3 = -sqrt(3) within %s" % mpmath.nstr(e, 3)))
        x3p = geometry.project_to_horosphere(x3, x1)
        d = geometry.hyp_distance(x2, x3p)
        e = abs(mpmath.cosh(d) - mpf(5) / 4)
        out.append(_check("horosphere-cosh-d", e < mpf("1e-12"), "cosh d(x2, x3') = 5/4 within %s" % mpmath.nstr(e, 3)))
        e = abs(2 * mpmath.sinh(d / 2) - 1 / mpmath.sqrt(2))
        out.append(_check("horosphere-chord", e < mpf("1e-12"), "chord l = 1/sqrt(2) within %s" % mpmath.nstr(e, 3)))

        consts = geometry.p6_constants()
        e = abs(consts.V0 - geometry.p6_V0_closed_form())
        out.append(_check("V0-closed-form", e < mpf("1e-12"), "assembled vs closed form within %s" % mpmath.nstr(e, 3)))
        out.append(
            _check(
                "V0-published-approx",
                abs(consts.V0 - mpf("1.112")) < mpf("5e-4"),
                "V0 = %s; published rounding 1.112" % mpmath.nstr(consts.V0, 10),
            )
        )
        e = abs(consts.sigma_volume - mpf(mpmath.pi) ** 3 / 777600)
        out.append(_check("sigma-volume", e < mpf("1e-30"), "vol(sigma) = pi^3/777600"))

    sh = sharp_S_enumeration(ImagQuadField.from_d(1), [5, 5], V=_catalan_volume())
    out.append(_check("m306-sharp-coefficient", sh.coefficient == 16.0, "2^(|S|+r_f+1) = %g" % sh.coefficient))
    she = sharp_S_enumeration(ImagQuadField.from_d(7), [], eps=0.5)
    out.append(_check("ex1-sharp-coefficient", she.coefficient == 8.0, "2^(r_f+3) = %g" % she.coefficient))

    total = math.log10(16) + 42 * math.log10(1600)
    out.append(
        _check(
            "m306-published-total",
            abs(total - m306.published_total_log10) < 1e-12,
            "log10(16*1600^42) = %.6f" % total,
        )
    )

    qc_ok = verify_complement(ex1.q, ex1.published_qc)
    out.append(_check("ex1-published-complement", qc_ok, "<1,1,7> completes <1,1,1,-7>"))
    qc_ok = verify_complement(m306.q, m306.published_qc)
    out.append(_check("m306-published-complement", qc_ok, "<2,5,10> completes <1,2,5,-10>"))

    kr = geometry.effective_K(_catalan_volume(), 1.0, 0.0, m306.published_total_log10)
    out.append(
        _check(
            "m306-K-comparison",
            False,
            "computed log10 K = %s; published quote ~ 7*10^150 (log10 = %.3f)"
            % (mpmath.nstr(kr["log10_K"], 12), m306.published_K_log10),
            info=True,
        )
    )
    return out


def _display_matrix_residual(sx):
    s = mpmath.sqrt
    disp = [
        [1, mpf(-1) / 2, 0, 0, 0, 0, 0],
        [0, s(3) / 2, 0, -1 / s(3), 0, 0, 0],
        [0, 0, 1, mpf(-1) / 2, 0, 0, 0],
        [0, 0, 0, s(mpf(5) / 3) / 2, -s(mpf(3) / 5), 0, 0],
        [0, 0, 0, 0, s(mpf(2) / 5), -s(mpf(5) / 2) / 2, 0],
        [0, 0, 0, 0, 0, s(mpf(3) / 2) / 2, -2 / s(3)],
        [0, 0, 0, 0, 0, 0, 1 / s(3)],
    ]
    return max(
        abs(sx.normal_matrix[i][j] - disp[i][j]) for i in range(7) for j in range(7)
    )


def _vertex_residual(sx):
    s = mpmath.sqrt
    exp = [
        [-1, -1 / s(3), 0, -2 / s(15), -s(mpf(2) / 5), -s(mpf(2) / 3), 2 * s(mpf(2) / 3)],
        [0, -1 / s(3), 0, -2 / s(15), -s(mpf(2) / 5), -s(mpf(2) / 3), 2 * s(mpf(2) / 3)],
        [0, 0, -1 / s(2), -s(mpf(3) / 10), -3 / (2 * s(5)), -s(3) / 2, s(3)],
        [0, 0, 0, -1 / s(5), -s(mpf(3) / 10), -1 / s(2), s(2)],
        [0, 0, 0, 0, mpf(-1) / 2, -s(mpf(5) / 3) / 2, s(mpf(5) / 3)],
        [0, 0, 0, 0, 0, -1 / s(3), 2 / s(3)],
        [0, 0, 0, 0, 0, 0, 1],
    ]
    return max(
        abs(sx.vertices[i][j] - exp[i][j]) for i in range(7) for j in range(7)
    )
