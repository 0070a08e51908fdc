"""JSON schemas for specs and configs, and CSV export of run artifacts.

Complex numbers serialize as two-element arrays ``[re, im]``. Envelope and
reservoir documents carry a ``"variant"`` discriminator; run configs carry a
``"kind"`` discriminator (``"lattice"`` or ``"driven"``). Parse errors name
the offending field by its dotted path.
"""

import json

import numpy as np

from .continuum import Tabulated, TightBindingChain
from .coupling import (
    BesselEnvelope,
    PoleExpansion,
    PoleTerm,
    RealPartOnly,
    Sampled,
    Zero,
)
from .driven import DriveConfig
from .errors import ConfigurationError
from .lattice import SimConfig

__all__ = [
    "coupling_to_json", "coupling_from_json",
    "continuum_to_json", "continuum_from_json",
    "config_to_json", "config_from_json",
    "load_config", "dump_config",
    "tabulated_from_csv",
    "trajectory_to_csv", "snapshots_to_json",
    "spectrum_to_csv", "rwa_comparison_to_csv",
    "CSV_FLOAT_FORMAT",
]

#: float formatting used in every CSV artifact (full precision, stable)
CSV_FLOAT_FORMAT = "%.17g"


def _c2j(z):
    z = complex(z)
    return [z.real, z.imag]


def _join(path, key):
    return f"{path}.{key}" if path else str(key)


def _req(doc, key, path):
    if not isinstance(doc, dict):
        raise ConfigurationError("expected a JSON object", field=path or "<root>")
    if key not in doc:
        raise ConfigurationError("missing required field", field=_join(path, key))
    return doc[key]


def _num(v, path):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigurationError("expected a number", field=path)
    return float(v)


def _int(v, path):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigurationError("expected an integer", field=path)
    return v


def _cnum(v, path):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if (isinstance(v, list) and len(v) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                    for x in v)):
        return complex(v[0], v[1])
    raise ConfigurationError("expected a number or [re, im] pair", field=path)


# ---------------------------------------------------------------------------
# coupling specs
# ---------------------------------------------------------------------------

def coupling_to_json(spec):
    if isinstance(spec, Zero):
        return {"variant": "zero"}
    if isinstance(spec, PoleExpansion):
        return {"variant": "pole_expansion",
                "terms": [{"amplitude": _c2j(t.amplitude),
                           "pole_location": _c2j(t.pole_location),
                           "order": t.order} for t in spec.terms]}
    if isinstance(spec, RealPartOnly):
        return {"variant": "real_part_only",
                "inner": coupling_to_json(spec.inner)}
    if isinstance(spec, BesselEnvelope):
        return {"variant": "bessel_envelope", "base": spec.base,
                "perturbation": coupling_to_json(spec.perturbation),
                "frequency": spec.frequency}
    if isinstance(spec, Sampled):
        return {"variant": "sampled", "t_start": spec.t_start, "dt": spec.dt,
                "values": [_c2j(v) for v in spec.values]}
    raise ConfigurationError(f"not a coupling spec: {type(spec).__name__}")


def coupling_from_json(doc, path="coupling"):
    variant = _req(doc, "variant", path)
    if variant == "zero":
        return Zero()
    if variant == "pole_expansion":
        terms_doc = _req(doc, "terms", path)
        if not isinstance(terms_doc, list):
            raise ConfigurationError("expected a list",
                                     field=_join(path, "terms"))
        terms = []
        for i, td in enumerate(terms_doc):
            tp = _join(path, f"terms[{i}]")
            order = _int(_req(td, "order", tp), _join(tp, "order"))
            if order < 1:
                raise ConfigurationError("must be a positive integer",
                                         field=_join(tp, "order"))
            terms.append(PoleTerm(
                amplitude=_cnum(_req(td, "amplitude", tp),
                                _join(tp, "amplitude")),
                pole_location=_cnum(_req(td, "pole_location", tp),
                                    _join(tp, "pole_location")),
                order=order))
        return PoleExpansion(tuple(terms))
    if variant == "real_part_only":
        return RealPartOnly(coupling_from_json(_req(doc, "inner", path),
                                               _join(path, "inner")))
    if variant == "bessel_envelope":
        return BesselEnvelope(
            base=_num(_req(doc, "base", path), _join(path, "base")),
            perturbation=coupling_from_json(
                _req(doc, "perturbation", path), _join(path, "perturbation")),
            frequency=_num(_req(doc, "frequency", path),
                           _join(path, "frequency")))
    if variant == "sampled":
        vals_doc = _req(doc, "values", path)
        if not isinstance(vals_doc, list):
            raise ConfigurationError("expected a list",
                                     field=_join(path, "values"))
        values = tuple(_cnum(v, _join(path, f"values[{i}]"))
                       for i, v in enumerate(vals_doc))
        return Sampled(t_start=_num(_req(doc, "t_start", path),
                                    _join(path, "t_start")),
                       dt=_num(_req(doc, "dt", path), _join(path, "dt")),
                       values=values)
    raise ConfigurationError(f"unknown variant {variant!r}",
                             field=_join(path, "variant"))


# ---------------------------------------------------------------------------
# continuum specs
# ---------------------------------------------------------------------------

def continuum_to_json(spec):
    if isinstance(spec, TightBindingChain):
        return {"variant": "tight_binding_chain",
                "kappa": spec.kappa, "kappa1": spec.kappa1}
    if isinstance(spec, Tabulated):
        return {"variant": "tabulated", "omega": list(spec.omega),
                "g_squared": list(spec.g_squared)}
    raise ConfigurationError(f"not a continuum spec: {type(spec).__name__}")


def continuum_from_json(doc, path="continuum"):
    variant = _req(doc, "variant", path)
    if variant == "tight_binding_chain":
        return TightBindingChain(
            kappa=_num(_req(doc, "kappa", path), _join(path, "kappa")),
            kappa1=_num(_req(doc, "kappa1", path), _join(path, "kappa1")))
    if variant == "tabulated":
        om = _req(doc, "omega", path)
        gs = _req(doc, "g_squared", path)
        if not isinstance(om, list) or not isinstance(gs, list):
            raise ConfigurationError("expected lists",
                                     field=_join(path, "omega"))
        return Tabulated(omega=tuple(_num(v, _join(path, f"omega[{i}]"))
                                     for i, v in enumerate(om)),
                         g_squared=tuple(_num(v, _join(path, f"g_squared[{i}]"))
                                         for i, v in enumerate(gs)))
    raise ConfigurationError(f"unknown variant {variant!r}",
                             field=_join(path, "variant"))


def tabulated_from_csv(path):
    """Read a two-column CSV ``omega, g_squared`` into a tabulated spec."""
    omega, gsq = [], []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ConfigurationError(
                    f"line {lineno}: expected two comma-separated columns")
            try:
                omega.append(float(parts[0]))
                gsq.append(float(parts[1]))
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise ConfigurationError(
                    f"line {lineno}: could not parse numbers") from None
    return Tabulated(omega=tuple(omega), g_squared=tuple(gsq))


# ---------------------------------------------------------------------------
# run configs
# ---------------------------------------------------------------------------

def _sim_config_to_json(config):
    return {
        "continuum": continuum_to_json(config.continuum),
        "coupling": coupling_to_json(config.coupling),
        "omega_a": config.omega_a,
        "t_start": config.t_start,
        "t_end": config.t_end,
        "dt": config.dt,
        "chain_length": config.chain_length,
        "contour_delta": config.contour_delta,
        "sample_stride": config.sample_stride,
        "snapshot_stride": config.snapshot_stride,
    }


def _sim_config_from_json(doc, path=""):
    return SimConfig(
        continuum=continuum_from_json(_req(doc, "continuum", path),
                                      _join(path, "continuum")),
        coupling=coupling_from_json(_req(doc, "coupling", path),
                                    _join(path, "coupling")),
        omega_a=_num(_req(doc, "omega_a", path), _join(path, "omega_a")),
        t_start=_num(_req(doc, "t_start", path), _join(path, "t_start")),
        t_end=_num(_req(doc, "t_end", path), _join(path, "t_end")),
        dt=_num(_req(doc, "dt", path), _join(path, "dt")),
        chain_length=_int(_req(doc, "chain_length", path),
                          _join(path, "chain_length")),
        contour_delta=_num(doc.get("contour_delta", 0.0),
                           _join(path, "contour_delta")),
        sample_stride=_int(doc.get("sample_stride", 1),
                           _join(path, "sample_stride")),
        snapshot_stride=_int(doc.get("snapshot_stride", 0),
                             _join(path, "snapshot_stride")),
    )


def config_to_json(config):
    if isinstance(config, SimConfig):
        return {"kind": "lattice", **_sim_config_to_json(config)}
    if isinstance(config, DriveConfig):
        return {"kind": "driven",
                "base": _sim_config_to_json(config.base),
                "A0": config.A0,
                "delta_a": coupling_to_json(config.delta_a),
                "omega_drive": config.omega_drive,
                "kappa1": config.kappa1,
                "drive_phase": config.drive_phase}
    raise ConfigurationError(f"not a run config: {type(config).__name__}")


def config_from_json(doc):
    kind = _req(doc, "kind", "")
    if kind == "lattice":
        return _sim_config_from_json(doc)
    if kind == "driven":
        return DriveConfig(
            base=_sim_config_from_json(_req(doc, "base", ""), "base"),
            A0=_num(_req(doc, "A0", ""), "A0"),
            delta_a=coupling_from_json(_req(doc, "delta_a", ""), "delta_a"),
            omega_drive=_num(_req(doc, "omega_drive", ""), "omega_drive"),
            kappa1=_num(_req(doc, "kappa1", ""), "kappa1"),
            drive_phase=_num(doc.get("drive_phase", 0.0), "drive_phase"))
    raise ConfigurationError(f"unknown kind {kind!r}; expected 'lattice' or "
                             "'driven'", field="kind")


def load_config(path):
    """Parse a run config from a JSON file."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"malformed JSON in {path}: {exc}") from exc
    return config_from_json(doc)


def dump_config(config, path):
    with open(path, "w") as fh:
        json.dump(config_to_json(config), fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# run artifacts
# ---------------------------------------------------------------------------

def _fmt(x):
    return CSV_FLOAT_FORMAT % x


def trajectory_to_csv(traj, path):
    """Write ``t, P_s, P_c, total, Re c_a, Im c_a`` rows."""
    with open(path, "w") as fh:
        fh.write("t,P_s,P_c,total,Re_c_a,Im_c_a\n")
        for i in range(traj.times.size):
            fh.write(",".join((
                _fmt(traj.times[i]), _fmt(traj.p_s[i]), _fmt(traj.p_c[i]),
                _fmt(traj.total[i]), _fmt(traj.c_a[i].real),
                _fmt(traj.c_a[i].imag))) + "\n")


def snapshots_to_json(traj, path):
    """Write full-state snapshots (complex amplitudes as [re, im])."""
    if traj.snapshots is None:
        raise ConfigurationError("the trajectory holds no snapshots; set "
                                 "snapshot_stride > 0")
    doc = {
        "schema_version": 1,
        "times": [float(t) for t in traj.snapshot_times],
        "states": [[[float(z.real), float(z.imag)] for z in row]
                   for row in traj.snapshots],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def spectrum_to_csv(omega, power, path):
    """Write ``omega, power`` rows of a Bloch-mode spectrum."""
    with open(path, "w") as fh:
        fh.write("omega,power\n")
        for om, pw in zip(np.asarray(omega), np.asarray(power)):
            fh.write(f"{_fmt(om)},{_fmt(pw)}\n")


def rwa_comparison_to_csv(cmp, path):
    """Write ``t, Ps_full, Ps_rwa, Pc_full, Pc_rwa`` rows."""
    with open(path, "w") as fh:
        fh.write("t,Ps_full,Ps_rwa,Pc_full,Pc_rwa\n")
        for i in range(cmp.times.size):
            fh.write(",".join((
                _fmt(cmp.times[i]), _fmt(cmp.p_s_full[i]), _fmt(cmp.p_s_rwa[i]),
                _fmt(cmp.p_c_full[i]), _fmt(cmp.p_c_rwa[i]))) + "\n")
