"""Structured reports and the replayable state token.

Reports are plain JSON-compatible dictionaries with a versioned schema
field; serialisation sorts keys and keeps integers exact (rationals are
encoded as "p/q" strings), so identical inputs give byte-identical output.
State tokens pack a chamber state (group, triangulation, bundle
coefficients) through zlib+base64 for replay across CLI invocations.
"""

from __future__ import annotations

import base64
import json
import zlib
from fractions import Fraction

from .bundles import TautBundle
from .chambers import Chamber, ChamberState
from .errors import UserError
from .fans import Triangulation, curve_degrees, line_ratio
from .groups import GroupSpec, parse_group

SCHEMA = "crepant-report/1"


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def char_label(rho) -> str:
    if len(rho.index) == 1:
        return str(rho.index[0])
    return "(" + ",".join(str(i) for i in rho.index) + ")"


def theta_string(g: GroupSpec, functional) -> str:
    """Render a functional over nontrivial characters as 'a*th_i + ... > 0'."""
    parts = []
    for coeff, rho in zip(functional, g.characters[1:]):
        if coeff == 0:
            continue
        name = "th" + char_label(rho)
        if coeff == 1:
            term = name
        elif coeff == -1:
            term = "-" + name
        else:
            term = f"{coeff}*{name}"
        parts.append(term)
    lhs = "0"
    if parts:
        lhs = parts[0]
        for p in parts[1:]:
            lhs += (" + " + p) if not p.startswith("-") else (" - " + p[1:])
    return lhs + " > 0"


def group_report(g: GroupSpec) -> dict:
    return {
        "spec": str(g),
        "order": g.r,
        "factors": [[n, list(w)] for n, w in g.factors],
        "characters": [list(c.index) for c in g.characters],
    }


def fan_report(fan: Triangulation, g: GroupSpec) -> dict:
    edges = []
    for e in fan.interior_edges:
        m1, m2, rho = line_ratio(fan, e, g)
        edges.append(
            {
                "endpoints": list(e.endpoints),
                "degrees": list(curve_degrees(fan, e)),
                "ratio": [list(m1), list(m2)],
                "ratio_character": list(rho.index),
            }
        )
    return {
        "vertices": [list(v) for v in fan.vertices],
        "kinds": list(fan.vertex_kind),
        "triangles": [list(t) for t in fan.triangles],
        "interior_edges": edges,
    }


def monomial_str(e) -> str:
    num = ""
    den = ""
    for v, n in zip("xyz", e):
        if n == 1:
            num += v
        elif n > 1:
            num += f"{v}^{n}"
        elif n == -1:
            den += v
        elif n < -1:
            den += f"{v}^{-n}"
    if den:
        return (num or "1") + "/" + den
    return num or "1"


def taut_report(taut) -> dict:
    """Chart generators and interior-edge degrees of every tautological
    line bundle."""
    g = taut.group
    fan = taut.fan
    out = {}
    for k, rho in enumerate(g.characters):
        out[char_label(rho)] = {
            "generators": [monomial_str(m) for m in taut.gens[k]],
            "edge_degrees": [taut.degree(rho, e) for e in fan.interior_edges],
        }
    return out


def marking_report(marking) -> dict:
    return {
        "lines": sorted(
            [list(ep), list(rho.index)] for ep, rho in marking.line_marks.items()
        ),
        "divisors": sorted(
            [v, sorted(list(c.index) for c in marks)]
            for v, marks in marking.divisor_marks.items()
        ),
    }


def facet_report(g: GroupSpec, facet, flabels=None) -> dict:
    pretty = theta_string(g, facet.normal)
    label = None
    if flabels:
        label = flabels.get(facet.normal)
    out = {
        "normal": list(facet.normal),
        "type": facet.wall_type,
        "inequality": pretty,
        "contracted_edges": [list(ep) for ep in facet.contracted],
    }
    if label:
        out["label"] = label
    if facet.splitting is not None:
        out["sub_characters"] = [list(i) for i in facet.splitting[0]]
        out["quotient_characters"] = [list(i) for i in facet.splitting[1]]
    if facet.divisor is not None:
        out["unstable_divisor"] = sorted(facet.divisor)
    if facet.swept is not None:
        out["swept_divisor"] = facet.swept
    return out


def chamber_report(g: GroupSpec, chamber: Chamber, flabels=None) -> dict:
    facets = sorted(
        (facet_report(g, f, flabels) for f in chamber.facets),
        key=lambda d: d["normal"],
    )
    redundant = sorted(
        {
            tuple(chamber.inequalities[i].functional())
            for i in chamber.redundant
        }
    )
    return {
        "facets": facets,
        "interior_point": [frac_str(x) for x in chamber.interior_point],
        "redundant_inequalities": [
            {"functional": list(f), "inequality": theta_string(g, f)} for f in redundant
        ],
    }


def curve_labels(state: ChamberState) -> dict:
    """Label curve-wall normals in the style f_k, with k the index of the
    character marking the contracted line."""
    g = state.group
    out = {}
    for e in state.fan.interior_edges:
        cc = state.taut.curve_class(e)
        func = tuple(cc[i] - cc[0] for i in range(1, len(cc)))
        if not any(func):
            continue
        from .intlin import primitive

        _, _, rho = line_ratio(state.fan, e, g)
        out.setdefault(primitive(func), f"f{char_label(rho)}")
    return out


# ---------------------------------------------------------------------------
# State tokens


def state_token(state: ChamberState) -> str:
    payload = {
        "group": str(state.group),
        "triangles": [list(t) for t in state.fan.triangles],
        "coeffs": [list(row) for row in state.taut.coeffs],
    }
    raw = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return base64.urlsafe_b64encode(zlib.compress(raw, 9)).decode()


def state_from_token(token: str) -> ChamberState:
    try:
        raw = zlib.decompress(base64.urlsafe_b64decode(token.encode()))
        payload = json.loads(raw)
        g = parse_group(payload["group"])
        fan = Triangulation(g, [tuple(t) for t in payload["triangles"]])
        taut = TautBundle.from_coeffs(g, fan, [tuple(r) for r in payload["coeffs"]])
    except UserError:
        raise
    except Exception as ex:  # malformed token data
        raise UserError(f"invalid state token: {ex}") from None
    return ChamberState(g, fan, taut, ())
