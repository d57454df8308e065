"""JSON encoding of every input schema and report.

Rationals are written "p/q" (always with a denominator) and +inf as "inf".
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .barcode import Bar, Barcode
from .core import INF, CobarError, Generator, GradedMap, IntervalComplex
from .cones import TwistedComplex, twisted
from .energy import ActionData
from .interleave import Movie
from .scenario import CobordismScenario, HomData
from .shadow import ShadowRegion


class SchemaError(CobarError, ValueError):
    pass


def rat(x) -> str:
    if x == INF:
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(v):
    if isinstance(v, bool):
        raise SchemaError(f"expected a rational, got {v!r}")
    if isinstance(v, str) and v.strip() in ("inf", "+inf"):
        return INF
    if isinstance(v, float):
        raise SchemaError(f"expected an exact rational string, got float {v!r}")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {v!r}") from exc


def _need(d, key, kind):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{kind} needs key {key!r}")
    return d[key]


# ---------------------------------------------------------------------------
# complexes, maps, barcodes


def complex_to_json(c: IntervalComplex) -> dict:
    gens = []
    for g in c.generators:
        row = {"id": g.id, "degree": g.degree, "birth": rat(g.birth)}
        if g.slope is not None:
            row["slope"] = g.slope
        if g.tag is not None:
            row["tag"] = g.tag
        gens.append(row)
    diff = sorted(c.differential, key=lambda e: (c.order(e[0]), c.order(e[1])))
    return {"generators": gens, "differential": [list(e) for e in diff]}


def complex_from_json(d) -> IntervalComplex:
    gens = []
    for row in _need(d, "generators", "complex"):
        gens.append(Generator(str(_need(row, "id", "generator")), int(_need(row, "degree", "generator")),
                              parse_rat(_need(row, "birth", "generator")), row.get("slope"), row.get("tag")))
    diff = [tuple(map(str, e)) for e in d.get("differential", [])]
    return IntervalComplex(tuple(gens), frozenset(diff))


def barcode_to_json(B: Barcode) -> list:
    return [{"degree": b.degree, "birth": rat(b.birth), "death": rat(b.death)} for b in B]


def barcode_from_json(rows) -> Barcode:
    return Barcode(Bar(int(r["degree"]), parse_rat(r["birth"]), parse_rat(r["death"])) for r in rows)


def _entries_json(entries, X, Y):
    return [list(e) for e in sorted(entries, key=lambda e: (X.order(e[0]), Y.order(e[1])))]


def map_to_json(m: GradedMap) -> dict:
    return {"source": complex_to_json(m.source), "target": complex_to_json(m.target),
            "shift": m.shift, "entries": _entries_json(m.entries, m.source, m.target)}


def map_from_json(d) -> GradedMap:
    X = complex_from_json(_need(d, "source", "map"))
    Y = complex_from_json(_need(d, "target", "map"))
    return GradedMap(X, Y, int(d.get("shift", 0)), frozenset(tuple(map(str, e)) for e in d.get("entries", [])))


def twisted_to_json(T: TwistedComplex) -> dict:
    maps = [[i, j, _entries_json(m.entries, T.pieces[i], T.pieces[j])] for (i, j), m in sorted(T.maps.items())]
    return {"pieces": [complex_to_json(P) for P in T.pieces], "maps": maps}


def _maps_from_json(rows) -> dict:
    out = {}
    for row in rows:
        i, j, ents = row
        out[(int(i), int(j))] = frozenset(tuple(map(str, e)) for e in ents)
    return out


def twisted_from_json(d) -> TwistedComplex:
    pieces = [complex_from_json(p) for p in _need(d, "pieces", "twisted complex")]
    return twisted(pieces, _maps_from_json(d.get("maps", [])))


# ---------------------------------------------------------------------------
# movies, shadows, actions


def movie_to_json(M: Movie) -> dict:
    return {"skeleton": complex_to_json(M.skeleton),
            "trajectories": {k: [[rat(s), rat(v)] for s, v in pts] for k, pts in M.trajectories.items()},
            "domain": [rat(M.domain[0]), rat(M.domain[1])]}


def movie_from_json(d) -> Movie:
    sk = complex_from_json(_need(d, "skeleton", "movie"))
    traj = {str(k): [(parse_rat(s), parse_rat(v)) for s, v in pts]
            for k, pts in _need(d, "trajectories", "movie").items()}
    dom = tuple(parse_rat(x) for x in d.get("domain", ["0", "1"]))
    return Movie(sk, traj, dom)


def shadow_to_json(R: ShadowRegion) -> dict:
    return {"curves": [[[rat(s), rat(y)] for s, y in c] for c in R.curves],
            "ends_minus": [rat(h) for h in R.ends_minus], "ends_plus": [rat(h) for h in R.ends_plus]}


def shadow_from_json(d) -> ShadowRegion:
    curves = [[(parse_rat(s), parse_rat(y)) for s, y in c] for c in _need(d, "curves", "shadow")]
    return ShadowRegion(tuple(curves), tuple(parse_rat(h) for h in d.get("ends_minus", ["0"])),
                        tuple(parse_rat(h) for h in d.get("ends_plus", ["0"])))


def actions_to_json(A: ActionData) -> dict:
    return {"NL": [[str(i), [rat(v) for v in vs]] for i, vs in sorted(A.NL.items())],
            "LL": [[str(i), str(j), [rat(v) for v in vs]] for (i, j), vs in sorted(A.LL.items())]}


def actions_from_json(d) -> ActionData:
    NL = {int(i): [parse_rat(v) for v in vs] for i, vs in d.get("NL", [])}
    LL = {(int(i), int(j)): [parse_rat(v) for v in vs] for i, j, vs in d.get("LL", [])}
    return ActionData(NL, LL)


def homdata_to_json(h: HomData) -> dict:
    pts = []
    for name, a, deg, k in h.points:
        pts.append([name, rat(a), deg] + ([k] if k != 1 else []))
    return {"points": pts, "pairs": [list(p) for p in h.pairs]}


def homdata_from_json(d) -> HomData:
    pts = [(p[0], parse_rat(p[1]), *p[2:]) for p in d.get("points", [])]
    return HomData(tuple(pts), tuple(tuple(p) for p in d.get("pairs", [])))


# ---------------------------------------------------------------------------
# scenarios


def scenario_to_json(sc: CobordismScenario) -> dict:
    out = {"name": sc.name, "epsilon": rat(sc.epsilon), "cap": sc.cap,
           "shadow": shadow_to_json(sc.shadow),
           "triple_intersections_empty": sc.triple_intersections_empty}
    if sc.movie is not None:
        out["movie"] = movie_to_json(sc.movie)
        out["ends"] = {"minus_slope": dict(sorted(sc.minus_slope.items())),
                       "plus_slope": dict(sorted(sc.plus_slope.items()))}
    if sc.actions is not None:
        out["actions"] = actions_to_json(sc.actions)
    if sc.hom_minus:
        out["hom"] = {"minus": [homdata_to_json(h) for h in sc.hom_minus],
                      "maps": [[i, j, sorted(map(list, e))] for (i, j), e in sorted(sc.hom_maps.items())],
                      "plus": homdata_to_json(sc.hom_plus) if sc.hom_plus is not None else None}
    return out


def scenario_from_json(d) -> CobordismScenario:
    from .interleave import DEFAULT_CAP, DEFAULT_EPSILON

    shadow = shadow_from_json(_need(d, "shadow", "scenario"))
    movie = movie_from_json(d["movie"]) if d.get("movie") is not None else None
    ends = d.get("ends", {})
    hom = d.get("hom") or {}
    plus = hom.get("plus")
    return CobordismScenario(
        name=str(d.get("name", "")),
        shadow=shadow,
        actions=actions_from_json(d["actions"]) if d.get("actions") is not None else None,
        hom_minus=[homdata_from_json(h) for h in hom.get("minus", [])],
        hom_maps=_maps_from_json(hom.get("maps", [])),
        hom_plus=homdata_from_json(plus) if plus is not None else None,
        movie=movie,
        minus_slope={str(k): int(v) for k, v in ends.get("minus_slope", {}).items()},
        plus_slope={str(k): int(v) for k, v in ends.get("plus_slope", {}).items()},
        triple_intersections_empty=bool(d.get("triple_intersections_empty", True)),
        epsilon=parse_rat(d.get("epsilon", rat(DEFAULT_EPSILON))),
        cap=int(d.get("cap", DEFAULT_CAP)),
    )


# ---------------------------------------------------------------------------
# generic report encoding


def to_jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)) and not isinstance(x, Fraction):
        return x
    if isinstance(x, Fraction) or x == INF:
        return rat(x)
    if isinstance(x, float):
        raise SchemaError(f"refusing to emit float {x!r}")
    if isinstance(x, Bar):
        return {"degree": x.degree, "birth": rat(x.birth), "death": rat(x.death)}
    if isinstance(x, IntervalComplex):
        return complex_to_json(x)
    if isinstance(x, TwistedComplex):
        return twisted_to_json(x)
    if dataclasses.is_dataclass(x) and hasattr(x, "as_dict"):
        return to_jsonable(x.as_dict())
    if isinstance(x, dict):
        out = {}
        for k, v in x.items():
            key = ",".join(map(str, k)) if isinstance(k, tuple) else str(k)
            out[key] = to_jsonable(v)
        return out
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise SchemaError(f"cannot encode {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False) + "\n"


KINDS = ("scenario", "twisted", "map", "movie", "shadow", "actions", "complex")


def detect_kind(d) -> str:
    if isinstance(d, dict):
        if "shadow" in d:
            return "scenario"
        if "pieces" in d:
            return "twisted"
        if "source" in d:
            return "map"
        if "skeleton" in d:
            return "movie"
        if "curves" in d:
            return "shadow"
        if "NL" in d or "LL" in d:
            return "actions"
        if "generators" in d:
            return "complex"
    raise SchemaError("cannot tell which schema this document follows")


LOADERS = {
    "scenario": scenario_from_json,
    "twisted": twisted_from_json,
    "map": map_from_json,
    "movie": movie_from_json,
    "shadow": shadow_from_json,
    "actions": actions_from_json,
    "complex": complex_from_json,
}


def load(path, kind: str | None = None):
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}") from exc
    k = kind or detect_kind(d)
    if k not in LOADERS:
        raise SchemaError(f"unknown schema {k!r}")
    return k, LOADERS[k](d)
