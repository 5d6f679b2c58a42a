"""Batch front end: load a structure, run one computation, write a JSON report.

Exit status: 0 when every certificate holds, 1 when one fails (the report is
still written), 2 on unusable input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field

from . import __version__
from . import builders as B
from . import extensions as X
from . import corings as C
from .errors import (
    DimensionError, DimensionGuardError, EnumerationCapError, FieldMismatchError,
    HopfGalError, InputError, PreconditionError, SolverScopeExceeded,
)
from .hopf import HopfAlgebra, find_group_likes, verify_structure
from .jsonio import (
    build_ref, load_comodule_algebra, load_crossed_data, load_group, load_hopf,
    load_json, load_module_algebra, parse_field, subspace_json, vector_json,
)
from .lattice import FinitePoset, export_dot
from .linalg import dimension_guard, span, subspace_contains
from .report import certificate, dumps, make_report, schema_text
from .subobjects import (
    close_coideal_subalgebra, close_right_coideal_subalgebra, group_subobjects,
    h_coinvariants, k_plus_h, takeuchi_check,
)

USAGE_ERRORS = (InputError, DimensionError, FieldMismatchError, DimensionGuardError,
                EnumerationCapError, SolverScopeExceeded, PreconditionError)

COMMANDS = ("verify", "group-likes", "takeuchi", "connection", "can", "lattice",
            "closed", "bridge", "example-circle", "schema")


@dataclass
class Subject:
    """What the input resolved to; ``kind`` picks the applicable computations."""

    kind: str                    # hopf | comodule | module | field_ext | example | crossed
    hopf: HopfAlgebra
    obj: object = None
    group: object = None
    source: dict = dc_field(default_factory=dict)


@dataclass
class JobSpec:
    command: str
    builder: str | None = None
    input: str | None = None
    field: str | None = None
    group: str | None = None
    out: str | None = None
    dot: str | None = None
    full: bool = False
    cap: int = 256
    target: str = "full"


# ---------------------------------------------------------------- input

def _builder_ref(job: JobSpec) -> dict:
    text = job.builder.strip()
    if text.startswith("{"):
        try:
            ref = json.loads(text)
        except json.JSONDecodeError as ex:
            raise InputError(f"--builder is not valid JSON: {ex.msg}") from None
    else:
        ref = {"builder": text}
    if job.group is not None:
        ref["group"] = job.group
    if job.field is not None:
        ref["field"] = job.field
    return ref


def _from_ref(ref: dict) -> Subject:
    name = ref.get("builder")
    obj = build_ref(ref)
    if isinstance(obj, HopfAlgebra):
        group = None
        if name in ("group_algebra", "dual_group_algebra"):
            group = load_group(ref.get("group", "S3"))
        return Subject("hopf", obj, obj, group, ref)
    if isinstance(obj, B.FieldExtension):
        return Subject("field_ext", obj.module.hopf, obj, obj.group, ref)
    if isinstance(obj, B.WorkedExample):
        return Subject("example", obj.a.hopf, obj, None, ref)
    raise InputError(f"builder {name!r} is not usable here")


def _from_json(obj: dict, field) -> Subject:
    if not isinstance(obj, dict):
        raise InputError("input must be a JSON object")
    if "builder" in obj:
        return _from_ref(obj)
    if "coaction" in obj:
        a = load_comodule_algebra(obj)
        return Subject("comodule", a.hopf, a)
    if "cocycle" in obj:
        d = load_crossed_data(obj)
        return Subject("crossed", d.hopf, d)
    if "action" in obj:
        m = load_module_algebra(obj)
        return Subject("module", m.hopf, m)
    if field is not None and "field" not in obj:
        obj = {**obj, "field": field}
    h = load_hopf(obj)
    return Subject("hopf", h, h)


def resolve(job: JobSpec) -> Subject:
    if (job.builder is None) == (job.input is None):
        raise InputError("give exactly one of --builder or --input")
    if job.field is not None:
        parse_field(job.field)
    if job.builder is not None:
        return _from_ref(_builder_ref(job))
    s = _from_json(load_json(job.input), job.field)
    s.source = {"input": job.input}
    return s


# ---------------------------------------------------------------- helpers

def _fmt(field, x) -> str:
    return field.format(x)


def _comodule_of(s: Subject):
    """The comodule algebra the extension-side computations run on."""
    if s.kind == "comodule":
        return s.obj
    if s.kind == "hopf":
        return X.regular_comodule(s.hopf)
    if s.kind == "field_ext":
        return s.obj.comodule
    if s.kind == "module":
        return X.module_to_comodule(s.obj)
    if s.kind == "crossed":
        return X.crossed_product(s.obj)
    raise InputError(f"{s.kind} input has no comodule algebra here; use example-circle")


def _seed_subalgebras(h: HopfAlgebra) -> list:
    """Left coideal subalgebras generated by single basis elements, plus k1 and H."""
    F, n = h.field, h.dim
    seeds = [[h.unit]] + [[h.unit, {i: F.one}] for i in range(n)] + [[{i: F.one} for i in range(n)]]
    out = []
    for vs in seeds:
        k = close_coideal_subalgebra(h, span(F, n, vs)).space
        if k not in out:
            out.append(k)
    return out


def _seed_quotients(h: HopfAlgebra) -> list:
    out = []
    for k in _seed_subalgebras(h):
        q = k_plus_h(close_coideal_subalgebra(h, k))
        if q not in out:
            out.append(q)
    return out


def _can_cert(name, res, **extra) -> dict:
    d = res.as_dict()
    wit = None if res.bijective else {"rank": res.rank, "source_dim": res.source_dim,
                                      "target_dim": res.target_dim}
    return certificate(name, res.bijective, wit, rank=res.rank, source_dim=res.source_dim,
                       target_dim=res.target_dim, bijective=res.bijective, injective=d["injective"],
                       surjective=d["surjective"], **extra)


def _poset_dot(p: FinitePoset, labels, name: str) -> str:
    return export_dot(p, labels, name)


def _space_label(s) -> str:
    return f"dim{s.dim}:" + ",".join(map(str, s.pivots))


def _unique_labels(spaces) -> list[str]:
    labels = []
    for s in spaces:
        lab = _space_label(s)
        k = 2
        base = lab
        while lab in labels:
            lab = f"{base}#{k}"
            k += 1
        labels.append(lab)
    return labels


# ---------------------------------------------------------------- commands

def cmd_verify(s: Subject, job: JobSpec):
    certs, res = [], {"kind": s.kind, "hopf_dim": s.hopf.dim, "field": s.hopf.field.json_key()}
    rep = verify_structure("hopf", s.hopf)
    certs.append(certificate("hopf_axioms", rep.ok, rep.as_dict()["violations"][:20] or None,
                             detail={"violations": len(rep.violations)}))
    if s.kind == "comodule":
        v = s.obj.violations()
        certs.append(certificate("comodule_algebra", not v, [list(map(str, x)) for x in v[:20]] or None))
    elif s.kind in ("module", "field_ext", "example"):
        m = s.obj if s.kind == "module" else (s.obj.module if s.kind == "field_ext" else s.obj.a)
        v = m.violations(limit=20)
        certs.append(certificate("module_algebra", not v, [list(map(str, x)) for x in v] or None))
        if s.kind == "field_ext":
            from .corings import automorphism_violations
            bad = automorphism_violations(s.obj.group, s.obj.e, s.obj.action)
            certs.append(certificate("galois_action", not bad, [list(map(str, x)) for x in bad[:20]] or None))
    elif s.kind == "crossed":
        v = X.crossed_violations(s.obj)
        certs.append(certificate("crossed_data", not v, [list(map(str, x)) for x in v[:20]] or None))
    return certs, res


def cmd_group_likes(s: Subject, job: JobSpec):
    h = s.hopf
    F = h.field
    gl = find_group_likes(h)
    keys = {tuple(sorted(g.items())) for g in gl}
    closed = all(tuple(sorted(h.mul(a, b).items())) in keys for a in gl for b in gl)
    closed &= all(tuple(sorted(h.S(a).items())) in keys for a in gl)
    res = {"count": len(gl), "field": F.json_key(),
           "elements": [vector_json(F, g, h.dim) for g in gl]}
    return [certificate("group_likes_form_group", closed, {"count": len(gl)}, dim=len(gl))], res


def cmd_takeuchi(s: Subject, job: JobSpec):
    h = s.hopf
    name = s.source.get("builder")
    if s.group is not None and name in ("group_algebra", "dual_group_algebra"):
        F = h.field
        other = B.dual_group_algebra(s.group, F) if name == "group_algebra" else B.group_algebra(s.group, F)
        if name == "group_algebra":
            gs = group_subobjects(s.group, h, other)
            subs, quots = gs.sub_gen, gs.quot_gen
        else:
            gs = group_subobjects(s.group, other, h)
            quots = gs.quot_gen_dual
            subs = [h_coinvariants(h, q) for q in quots]
        origin = "subgroups"
    else:
        subs = [close_coideal_subalgebra(h, k) for k in _seed_subalgebras(h)]
        quots = [k_plus_h(k) for k in subs]
        origin = "generated"
    r = takeuchi_check(h, subs, quots)
    trips = sum(1 for row in r["rows"] if row["kind"] == "sub" and row["round_trip"])
    res = {"origin": origin, "round_trips": trips, "checked": r["checked"], "rows": r["rows"]}
    return [certificate("takeuchi_round_trips", r["ok"], r["failures"] or None, dim=trips)], res


def _connection(s: Subject, job: JobSpec):
    a = _comodule_of(s)
    h = a.hopf
    if s.kind == "hopf":
        ec = X.extension_connection(a, sub_candidates=_seed_subalgebras(h), cap=job.cap)
    else:
        ec = X.extension_connection(a, quot_candidates=_seed_quotients(h), cap=job.cap)
    return a, ec


def cmd_connection(s: Subject, job: JobSpec):
    a, ec = _connection(s, job)
    qc, sc = ec.conn.closed
    res = {
        "quotients": [{"dim": q.dim, "ideal": subspace_json(q.ideal.space)} for q in ec.quots],
        "subalgebras": [subspace_json(x) for x in ec.subs],
        "phi": list(ec.conn.phi), "psi": list(ec.conn.psi),
        "closed_quotients": list(qc), "closed_subalgebras": list(sc),
    }
    bij = len(qc) == len(sc)
    certs = [certificate("galois_connection", ec.conn.is_valid(), ec.conn.violations()[:5] or None),
             certificate("closed_sets_in_bijection", bij, {"closed_quotients": len(qc), "closed_subalgebras": len(sc)})]
    dot = _poset_dot(ec.conn.q, _unique_labels(ec.subs), "subalgebras")
    return certs, res, dot


def cmd_closed(s: Subject, job: JobSpec):
    a, ec = _connection(s, job)
    rows, certs = [], []
    crossed = s.kind == "crossed"
    for i, q in enumerate(ec.quots):
        c = X.closedness_certificates(a, q=q, crossed=crossed)
        rows.append({"kind": "quotient", "index": i, "dim": q.dim, **c})
    for i, x in enumerate(ec.subs):
        c = X.closedness_certificates(a, s=x)
        rows.append({"kind": "subalgebra", "index": i, "dim": x.dim, **c})
    # the certificate is the known implication, not closedness of every element
    can_onto = X.can_full(a).surjective
    bad = [r for r in rows if r["kind"] == "quotient" and r["q_galois"] and not r["closed"] and can_onto]
    certs.append(certificate("q_galois_implies_closed", not bad, bad or None))
    for r in rows:
        certs.append(certificate(f"{r['kind']}_{r['index']}", True, closed=r["closed"], dim=r["dim"],
                                 bijective=r.get("q_galois", r.get("can_s_bijective"))))
    return certs, {"rows": rows, "equivalence_asserted": crossed or X.is_regular(a)}


def _module_of(s: Subject):
    if s.kind == "module":
        return s.obj
    if s.kind == "field_ext":
        return s.obj.module
    if s.kind == "example":
        return s.obj.a
    raise InputError("this target needs a module algebra, a field extension or the worked example")


def cmd_can(s: Subject, job: JobSpec):
    t = job.target
    certs, res = [], {"target": t}
    if t == "full":
        if s.kind == "example":
            ex = s.obj
            if job.full:
                with dimension_guard(16384):
                    r = C.coring_can(ex.a, relative_basis=ex.relative_basis, strict=False, full=True,
                                     domain=ex.domain)
            else:
                r = C.coring_can(ex.a, relative_basis=ex.relative_basis, strict=False, domain=ex.domain)
            certs.append(_coring_can_cert(ex.a.field, r, res))
        else:
            r = X.can_full(_comodule_of(s))
            certs.append(_can_cert("can_full", r))
            res.update(r.as_dict())
    elif t == "Q":
        a = _comodule_of(s)
        for i, q in enumerate(_seed_quotients(a.hopf)):
            certs.append(_can_cert(f"can_q_{i}", X.can_q(a, q), dim=q.dim))
    elif t == "S":
        a, ec = _connection(s, job)
        for i, x in enumerate(ec.subs):
            certs.append(_can_cert(f"can_s_{i}", X.can_s(a, x), dim=x.dim))
    elif t == "coring":
        if s.kind == "field_ext":
            fe = s.obj
            r = C.field_ext_galois_check(fe.group, fe.e, fe.action)
            ok = r["bijective"] and not r["coring_morphism_violations"]
            certs.append(certificate("field_ext_can", ok, None if ok else r, rank=r["rank"],
                                     source_dim=r["source_dim"], target_dim=r["target_dim"],
                                     bijective=r["bijective"]))
            res.update({k: v for k, v in r.items() if k != "coring_morphism_violations"})
        m = _module_of(s)
        if s.kind == "example":
            r = C.coring_can(m, relative_basis=s.obj.relative_basis, strict=False, domain=s.obj.domain)
        else:
            r = C.coring_can(m, strict=False)
        certs.append(_coring_can_cert(m.field, r, res))
    elif t == "coext":
        if s.kind != "hopf":
            raise InputError("the coext target needs a Hopf algebra input")
        h = s.hopf
        c, act = X.hopf_as_module_coalgebra(h)
        for i, k in enumerate(_seed_subalgebras(h)):
            certs.append(_can_cert(f"coext_can_{i}", X.coextension_can(c, h, act, k), dim=k.dim))
    else:
        raise InputError(f"unknown target {t!r}")
    return certs, res


def _coring_can_cert(F, r: dict, res: dict) -> dict:
    out = {k: v for k, v in r.items() if k not in ("matrix", "det", "domain")}
    if "matrix" in r:
        out["matrix"] = [[_fmt(F, x) for x in row] for row in r["matrix"].rows]
        out["det"] = _fmt(F, r["det"])
    if "domain" in r:
        out["domain"] = {"domain": r["domain"]["domain"], "method": r["domain"]["method"]}
    res.update(json.loads(json.dumps(out, default=str)))
    wit = None if r["bijective"] else {"det": out.get("det"), "rank": r.get("rank")}
    return certificate("coring_can", r["bijective"], wit, rank=r.get("rank"), bijective=r["bijective"],
                       source_dim=r.get("source_dim"), target_dim=r.get("target_dim"))


def cmd_lattice(s: Subject, job: JobSpec):
    if s.group is not None:
        g = s.group
        h = B.group_algebra(g, s.hopf.field)
        gs = group_subobjects(g, h, B.dual_group_algebra(g, s.hopf.field))
        labels = [g.label(x) for x in gs.subgroups]
        dot = export_dot(gs.subgroup_poset, labels, "subgroups")
        edges = sorted([labels[a], labels[b]] for a, b in gs.subgroup_poset.covers())
        res = {"subgroups": labels, "covers": edges, "normal": [g.is_normal(x) for x in gs.subgroups]}
        certs = [certificate("quotients_anti_isomorphic", gs.anti_isomorphic, None, dim=len(labels)),
                 certificate("dual_quotients_isomorphic", gs.dual_isomorphic, None),
                 certificate("coset_kernels_match", gs.coset_kernels_match, None)]
        return certs, res, dot
    certs, res, dot = cmd_connection(s, job)
    return certs, res, dot


def cmd_bridge(s: Subject, job: JobSpec):
    if s.kind == "field_ext":
        r = C.congruence_submonoid_bridges(s.obj.group, s.obj.e, s.obj.action)
    elif s.group is not None:
        r = C.congruence_submonoid_bridges(s.group)
    else:
        raise InputError("bridge needs a group builder or a finite field extension")
    dot = r["dot"]["submonoids"] + r["dot"]["coideals"]
    res = {k: v for k, v in r.items() if k != "dot"}
    certs = [certificate("submonoid_coideal_bridge", r["theta_xi_id"] and r["xi_theta_ge_id"],
                         {k: r[k] for k in ("theta_xi_id", "xi_theta_ge_id")}),
             certificate("congruence_bridge", r["ok"], r["ge1"])]
    return certs, res, dot


def example_circle(full: bool = False, ex=None):
    """Build the 128-dimensional example and compute its headline numbers."""
    ex = ex if ex is not None else B.paper_example()
    m, F = ex.a, ex.a.field
    b = X.invariants(m)
    b_expected = span(F, 128, ex.b_basis)
    std = C.coring_can(m, relative_basis=ex.relative_basis, strict=False, domain=ex.domain)
    rows = C.coring_can(m, relative_basis=ex.relative_basis, strict=False, domain=ex.domain,
                        h_rows=ex.row_vectors)
    h = m.hopf
    ks = []
    seeds = [[h.unit]] + [[h.unit, {i: F.one}] for i in range(h.dim)]
    seeds += [[h.unit, {i: F.one}, {j: F.one}] for i in range(h.dim) for j in range(i + 1, h.dim)]
    for vs in seeds:
        k = close_right_coideal_subalgebra(h, span(F, h.dim, vs))
        if k not in ks:
            ks.append(k)
    images = []
    for k in ks:
        a_k = X.invariants(m, k)
        if a_k not in images:
            images.append(a_k)
    images.sort(key=lambda x: (x.dim, x.pivots))
    pos = FinitePoset.from_relation(range(len(images)), lambda i, j: subspace_contains(images[j], images[i]))
    out = {"example": ex, "b": b, "b_matches": b == b_expected, "standard": std, "labelled_rows": rows,
           "k_list": ks, "images": images, "image_poset": pos}
    if full:
        with dimension_guard(16384):
            out["full"] = C.coring_can(m, relative_basis=ex.relative_basis, strict=False, full=True,
                                       domain=ex.domain)
    return out


def cmd_example_circle(s, job: JobSpec):
    r = example_circle(job.full)
    F = r["example"].a.field
    alg = r["example"].a.alg
    labels = []
    for x, fallback in zip(r["images"], _unique_labels(r["images"])):
        gens = B.example_generators(alg, x)
        labels.append(fallback if gens is None else "<" + ",".join(gens) + ">")
    res = {
        "invariants_dim": r["b"].dim,
        "invariants_equal_X_Z4": r["b_matches"],
        "table_mismatches": [list(x) for x in r["example"].table_mismatches],
        "relative_basis": list(B.EXAMPLE_RELATIVE_BASIS),
        "matrix_standard_rows": [[_fmt(F, x) for x in row] for row in r["standard"]["matrix"].rows],
        "det_standard_rows": _fmt(F, r["standard"]["det"]),
        "row_labels": list(B.EXAMPLE_ROW_LABELS),
        "matrix": [[_fmt(F, x) for x in row] for row in r["labelled_rows"]["matrix"].rows],
        "det": _fmt(F, r["labelled_rows"]["det"]),
        "domain": r["standard"]["domain"]["domain"],
        "mono_action": r["standard"]["mono_action"],
        "coideal_subalgebras": len(r["k_list"]),
        "image_dims": [x.dim for x in r["images"]],
        "image_labels": labels,
    }
    certs = [
        certificate("invariants_dim_16", r["b"].dim == 16 and r["b_matches"], {"dim": r["b"].dim}, dim=r["b"].dim),
        certificate("coefficient_det_nonzero", bool(r["labelled_rows"]["det"]), {"det": res["det"]},
                    bijective=r["labelled_rows"]["bijective"]),
    ]
    if job.full:
        f = r["full"]
        res["full"] = {k: f[k] for k in ("rank", "source_dim", "target_dim", "bijective")}
        certs.append(certificate("can_full_rank", f["bijective"], res["full"], rank=f["rank"],
                                 bijective=f["bijective"]))
    return certs, res, export_dot(r["image_poset"], labels, "invariant_images")


# ---------------------------------------------------------------- driver

def run(job: JobSpec, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if job.command == "schema":
        stdout.write(schema_text())
        return 0
    if job.command not in COMMANDS:
        raise InputError(f"unknown command {job.command!r}")
    dot = None
    if job.command == "example-circle":
        s = None
        certs, res, dot = cmd_example_circle(None, job)
        source = {"builder": "paper_example"}
    else:
        s = resolve(job)
        source = s.source
        fn = {"verify": cmd_verify, "group-likes": cmd_group_likes, "takeuchi": cmd_takeuchi,
              "connection": cmd_connection, "can": cmd_can, "lattice": cmd_lattice,
              "closed": cmd_closed, "bridge": cmd_bridge}[job.command]
        out = fn(s, job)
        certs, res = out[0], out[1]
        dot = out[2] if len(out) > 2 else None
    command = job.command + (f" --target {job.target}" if job.command == "can" else "")
    rep = make_report(command, certs, res, json.loads(json.dumps(source, default=str)))
    text = dumps(rep)
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if dot is not None:
        if job.dot:
            with open(job.dot, "w", encoding="utf-8") as fh:
                fh.write(dot)
        elif job.command == "lattice" and job.out:
            stdout.write(dot)
    return 0 if rep["ok"] else 1


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfgal", description="Exact Hopf-Galois computations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--builder", help="builder name or a JSON builder ref")
    p.add_argument("--input", help="structure JSON file")
    p.add_argument("--field", help="Q, Qi or Fp:<p>")
    p.add_argument("--group", help="group name for group builders (Z2, S3, D8, V4, ...)")
    p.add_argument("--target", default="full", choices=("full", "Q", "S", "coring", "coext"))
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--dot", help="write the DOT diagram here")
    p.add_argument("--full", action="store_true", help="run the 1024-dimensional rank computation")
    p.add_argument("--cap", type=int, default=256, help="enumeration cap for connections")
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    job = JobSpec(command=args.command, builder=args.builder, input=args.input, field=args.field,
                  group=args.group, out=args.out, dot=args.dot, full=args.full, cap=args.cap,
                  target=args.target)
    try:
        return run(job)
    except USAGE_ERRORS as ex:
        print(f"error: {ex}", file=sys.stderr)
        if getattr(ex, "witness", None) is not None:
            print(f"witness: {json.dumps(ex.witness, default=str)}", file=sys.stderr)
        return 2
    except HopfGalError as ex:
        print(f"error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 1
