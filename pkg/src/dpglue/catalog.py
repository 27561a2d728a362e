"""Building blocks, gluing classification, and explicit equations.

The block table lists the pairs (C in Y) that can serve as conductor
data: Y is the plane, a scroll, or a cone over a rational normal curve,
polarized so that -K_Y = H + C.  Gluing scenarios combine blocks along
their conics/line pairs/double lines; the classifier decides the case
and the per-case Gorenstein checks run on top.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from dpglue.fields import base_field
from dpglue.multipoly import MPoly, parse_mpoly


# -- Picard lattice ----------------------------------------------------


@dataclass(frozen=True)
class PicardClass:
    """Divisor class: c*L on the plane, or c1*A + c2*B on a scroll F_a.

    surface is ("P2",), ("F", a) or ("Fcone", a); cone classes live on
    the minimal resolution F_a.
    """

    surface: tuple
    coeffs: tuple

    def __add__(self, other: "PicardClass") -> "PicardClass":
        if other.surface != self.surface:
            raise ValueError("classes on different surfaces")
        return PicardClass(
            self.surface, tuple(x + y for x, y in zip(self.coeffs, other.coeffs))
        )

    def scale(self, k: int) -> "PicardClass":
        return PicardClass(self.surface, tuple(k * x for x in self.coeffs))


def hirzebruch_pairing(d1: PicardClass, d2: PicardClass) -> int:
    """Intersection pairing: L^2 = 1 on the plane; A^2 = 0, A.B = 1,
    B^2 = -a on F_a."""
    if d1.surface != d2.surface:
        raise ValueError("classes on different surfaces")
    if d1.surface[0] == "P2":
        return d1.coeffs[0] * d2.coeffs[0]
    a = d1.surface[1]
    c1, c2 = d1.coeffs
    e1, e2 = d2.coeffs
    return c1 * e2 + c2 * e1 - a * c2 * e2


def canonical_class(surface: tuple) -> PicardClass:
    if surface[0] == "P2":
        return PicardClass(surface, (-3,))
    a = surface[1]
    return PicardClass(surface, (-(a + 2), -2))


# -- building blocks ---------------------------------------------------


_CONIC_NATURE = {
    "a1": "smooth", "a2": "line-pair", "a3": "double-line",
    "b": "smooth",
    "c0": "smooth", "c1": "line-pair", "c2": "double-line",
    "d0": "smooth", "d1": "line-pair",
    "e": "smooth",
}

_BLOCK_TAGS = tuple(_CONIC_NATURE)


@dataclass(frozen=True)
class BuildingBlock:
    case: str
    a: int | None
    H: PicardClass
    C: PicardClass
    conic: str
    degree: int


def building_block(case: str, a: int | None = None) -> BuildingBlock:
    """Construct a table row; raises on illegal tag/parameter pairs."""
    if case not in _CONIC_NATURE:
        raise ValueError(f"unknown case tag {case!r}")
    conic = _CONIC_NATURE[case]
    if case in ("a1", "a2", "a3"):
        if a not in (None,):
            raise ValueError("plane degree-1 cases take no parameter")
        s = ("P2",)
        return BuildingBlock(case, None, PicardClass(s, (1,)),
                             PicardClass(s, (2,)), conic, 1)
    if case == "b":
        if a not in (None,):
            raise ValueError("the Veronese case takes no parameter")
        s = ("P2",)
        return BuildingBlock(case, None, PicardClass(s, (2,)),
                             PicardClass(s, (1,)), conic, 4)
    if a is None:
        raise ValueError(f"case {case!r} needs the scroll parameter a")
    if case.startswith("c"):
        if a < 2:
            raise ValueError("cone cases need a >= 2")
        if case == "c0" and a != 2:
            raise ValueError("a smooth conic on the cone only occurs for a = 2")
        s = ("Fcone", a)
        return BuildingBlock(case, a, PicardClass(s, (a, 1)),
                             PicardClass(s, (2, 0)), conic, a)
    if case.startswith("d"):
        if a < 0:
            raise ValueError("scroll parameter must be >= 0")
        if case == "d0" and a > 1:
            raise ValueError("a smooth conic of type A+B needs a <= 1")
        s = ("F", a)
        return BuildingBlock(case, a, PicardClass(s, (a + 1, 1)),
                             PicardClass(s, (1, 1)), conic, a + 2)
    # case e
    if a < 0:
        raise ValueError("scroll parameter must be >= 0")
    s = ("F", a)
    return BuildingBlock(case, a, PicardClass(s, (a + 2, 1)),
                         PicardClass(s, (0, 1)), conic, a + 4)


def verify_block(block: BuildingBlock) -> bool:
    """H + C = -K in the Picard lattice and H^2 = the table degree.

    Cone cases are checked on the minimal resolution with the pullback
    polarization aA + B, degree only (the anticanonical identity on the
    cone itself involves fractional discrepancy along B).
    """
    deg = hirzebruch_pairing(block.H, block.H)
    if deg != block.degree:
        return False
    if block.H.surface[0] == "Fcone":
        return True
    anti = canonical_class(block.H.surface).scale(-1)
    total = block.H + block.C
    return total == anti


def block_table(a_max: int = 5):
    """All legal table rows with parameter up to a_max."""
    rows = []
    for tag in ("a1", "a2", "a3", "b"):
        rows.append(building_block(tag))
    for a in range(0, a_max + 1):
        for tag in ("c0", "c1", "c2", "d0", "d1", "e"):
            try:
                rows.append(building_block(tag, a))
            except ValueError:
                continue
    return rows


# -- gluing scenarios --------------------------------------------------


@dataclass
class GlueScenario:
    characteristic: int
    blocks: list
    glue_case: str            # declared family: A | B | C | D
    identifications: list = dc_field(default_factory=list)
    derivation: object = None  # GenericGlueData for the D family
    cover: str = "separable"   # case A metadata (char 2 dichotomy)
    name: str = ""


class ScenarioError(ValueError):
    pass


def classify_gluing(scenario: GlueScenario) -> str:
    """Decide the gluing case from the blocks, or raise ScenarioError."""
    blocks = scenario.blocks
    if not blocks:
        raise ScenarioError("no blocks")
    natures = [b.conic for b in blocks]
    tags = [b.case for b in blocks]
    r = len(blocks)
    declared = scenario.glue_case
    if declared == "A":
        if r != 1 or natures[0] != "smooth":
            raise ScenarioError("case A needs a single block with a smooth conic")
        return "A"
    if declared == "B":
        if r != 2 or any(n != "smooth" for n in natures):
            raise ScenarioError("case B needs two blocks with smooth conics")
        if tags[0] == tags[1] == "a1":
            # two planes: the degree-2 weighted quartic y^2 = q^2
            return "B-degenerate"
        return "B"
    if declared == "C":
        if any(n != "line-pair" for n in natures):
            raise ScenarioError("case C needs line-pair conics everywhere")
        if r == 2 and tags[0] == tags[1] == "a2":
            raise ScenarioError("case C_2 cannot use two planes")
        if len(scenario.identifications) != r:
            raise ScenarioError(f"case C_{r} needs {r} line identifications")
        return f"C{r}"
    if declared == "D":
        if any(n != "double-line" for n in natures):
            raise ScenarioError("case D needs double-line conics everywhere")
        if r == 2 and tags[0] == tags[1] == "a3":
            raise ScenarioError("case D_2 cannot use two planes")
        if scenario.derivation is None or scenario.derivation.r != r:
            raise ScenarioError(f"case D_{r} needs derivation data with r = {r}")
        return f"D{r}"
    raise ScenarioError(f"unknown glue case {declared!r}")


# -- Moebius maps and node matching ------------------------------------


def _proj_point(field, v):
    """(p : q) from an int, a string number, or 'inf'."""
    if v == "inf":
        return (field.one, field.zero)
    return (field.from_int(int(v)), field.one)


def _mobius_matrix(field, p1, p2, p3):
    """2x2 matrix sending (1:0), (0:1), (1:1) to the three points."""
    det = p1[0] * p2[1] - p1[1] * p2[0]
    if not det:
        raise ScenarioError("identification points are not distinct")
    # solve alpha*p1 + beta*p2 = p3
    alpha = (p3[0] * p2[1] - p3[1] * p2[0]) / det
    beta = (p1[0] * p3[1] - p1[1] * p3[0]) / det
    if not alpha or not beta:
        raise ScenarioError("identification points are not distinct")
    return [[alpha * p1[0], beta * p2[0]], [alpha * p1[1], beta * p2[1]]]


def mobius_from_pairs(field, pairs):
    """The Moebius map sending three source points to three targets,
    as a 2x2 matrix acting on projective pairs."""
    if len(pairs) != 3:
        raise ScenarioError("a Moebius identification needs three point pairs")
    src = [_proj_point(field, s) for s, _ in pairs]
    dst = [_proj_point(field, t) for _, t in pairs]
    ms = _mobius_matrix(field, *src)
    md = _mobius_matrix(field, *dst)
    # md o ms^{-1}
    a, b = ms[0]
    c, d = ms[1]
    inv = [[d, -b], [-c, a]]
    return [
        [
            md[0][0] * inv[0][0] + md[0][1] * inv[1][0],
            md[0][0] * inv[0][1] + md[0][1] * inv[1][1],
        ],
        [
            md[1][0] * inv[0][0] + md[1][1] * inv[1][0],
            md[1][0] * inv[0][1] + md[1][1] * inv[1][1],
        ],
    ]


def node_matching_check(scenario: GlueScenario):
    """(ok, diagnostics): every identification must carry node to node.

    A mismatch is certified by the usual clash: a section regular at the
    target of the marker has a pole at the matched point on the other
    branch, so the glued ring cannot be Gorenstein there.
    """
    field = base_field(scenario.characteristic)
    problems = []
    for k, ident in enumerate(scenario.identifications):
        mat = mobius_from_pairs(field, ident["map"])
        node = _proj_point(field, ident["node"])
        image = (
            mat[0][0] * node[0] + mat[0][1] * node[1],
            mat[1][0] * node[0] + mat[1][1] * node[1],
        )
        target = _proj_point(field, ident["nodeTarget"])
        cross = image[0] * target[1] - image[1] * target[0]
        if cross:
            problems.append(
                f"identification {k} moves the node marker: sections regular "
                "at the marked node acquire a pole on the matched line"
            )
    return (not problems, problems)


# -- reports -----------------------------------------------------------


def scenario_report(scenario: GlueScenario) -> dict:
    """Run all verifications on a scenario; failures recorded, not thrown."""
    from dpglue import cohomology, glue

    report = {
        "name": scenario.name,
        "characteristic": scenario.characteristic,
        "blocks": [],
        "errors": [],
    }
    degree = 0
    for b in scenario.blocks:
        ok = verify_block(b)
        report["blocks"].append(
            {"case": b.case, "a": b.a, "degree": b.degree, "verified": ok}
        )
        if not ok:
            report["errors"].append(f"block {b.case} fails the lattice check")
        degree += b.degree
    report["degree"] = degree
    try:
        case = classify_gluing(scenario)
    except ScenarioError as exc:
        report["case"] = None
        report["errors"].append(str(exc))
        report["gorenstein"] = False
        return report
    report["case"] = case
    r = len(scenario.blocks)
    if case == "A":
        gorenstein = True
        singularity = (
            "inseparable-node"
            if scenario.characteristic == 2 and scenario.cover == "inseparable"
            else "node"
        )
        tame, wild_points, chi, h1 = True, [], 1, 0
    elif case.startswith("B"):
        gorenstein = True
        singularity = "node"
        tame, wild_points, chi, h1 = True, [], 1, 0
    elif case.startswith("C"):
        ok, problems = node_matching_check(scenario)
        gorenstein = ok
        report["errors"].extend(problems)
        singularity = "node" if ok else "not-gorenstein"
        tame, wild_points, chi, h1 = True, [], (1 if ok else None), (0 if ok else None)
    else:  # D family
        data = scenario.derivation
        ok, problems = cohomology.global_gorenstein(data)
        gorenstein = ok
        report["errors"].extend(problems)
        tame, wild = glue.is_tame(data)
        wild_points = [(glue._place_key(pl), order) for pl, order in wild]
        if ok:
            chi = cohomology.chi_OX(data)
            h1 = cohomology.h1_OX(data)
            if tame:
                singularity = {1: "cusp", 2: "tacnode"}.get(
                    r, f"r-concurrent-lines({r})"
                )
            else:
                singularity = f"wild({r})"
        else:
            chi, h1, singularity = None, None, "not-gorenstein"
        report["n_delta_generic"] = (2 * r, r)
    if case[0] in "ABC" and scenario.derivation is not None and gorenstein:
        # conductor-level derivation datum supplied for a tame family:
        # it must confirm the closed-form answer
        data = scenario.derivation
        ok_d, problems = cohomology.global_gorenstein(data)
        tame_d, wild_d = glue.is_tame(data)
        if not ok_d or not tame_d:
            report["errors"].extend(problems or ["derivation datum is wild"])
            gorenstein, chi, h1 = False, None, None
            singularity = "not-gorenstein"
        else:
            chi = cohomology.chi_OX(data)
            h1 = cohomology.h1_OX(data)
        report["n_delta_generic"] = (2 * data.r, data.r)
    report["gorenstein"] = gorenstein
    report["singularity"] = singularity
    report["tame"] = tame
    report["wildPoints"] = wild_points
    report["chi"] = chi
    report["h1"] = h1
    return report


# -- explicit equations ------------------------------------------------


def verify_parametrization(characteristic: int, hypersurface: str,
                           variables, substitution: dict,
                           target_variables) -> bool:
    """Check that the composed polynomial vanishes identically.

    ``substitution`` maps each hypersurface variable to an expression in
    the target variables; entries may reference other substitution keys
    (resolved by repeated substitution, cycles rejected).
    """
    field = base_field(characteristic)
    variables = tuple(variables)
    target_variables = tuple(target_variables)
    all_names = tuple(dict.fromkeys(target_variables + tuple(substitution)))
    exprs = {
        k: parse_mpoly(field, all_names, v) for k, v in substitution.items()
    }
    for _ in range(len(substitution) + 1):
        changed = False
        for k, e in exprs.items():
            used = [
                name
                for name, deg in zip(
                    e.vars, [max((ex[i] for ex in e.terms), default=0)
                             for i in range(len(e.vars))]
                )
                if deg and name in exprs and name != k
            ]
            if used:
                exprs[k] = e.substitute({u: exprs[u] for u in used})
                changed = True
        if not changed:
            break
    else:
        raise ValueError("cyclic substitution")
    # project onto the target variables
    final = {}
    for k, e in exprs.items():
        proj = MPoly(field, target_variables, {})
        for exps, c in e.terms.items():
            for name, deg in zip(e.vars, exps):
                if deg and name not in target_variables:
                    raise ValueError(f"unresolved name {name!r} in substitution")
            slim = tuple(
                exps[e.vars.index(t)] if t in e.vars else 0
                for t in target_variables
            )
            proj = proj + MPoly(field, target_variables, {slim: c})
        final[k] = proj
    hyp = parse_mpoly(field, variables, hypersurface)
    return hyp.substitute(final).is_zero()


def monomial_relation_check(p: int, n: int, h0: int = 1) -> bool:
    """v_i v_j - u^n v_{i+j} is a unit multiple of x^(i+j-2) y^2 for all
    1 <= i, j with i + j <= p - 1, where u = x^p and
    v_i = x^(np+i) - i h0 x^(i-1) y with h0 a unit."""
    from dpglue.fields import is_prime

    if not is_prime(p) or p < 3:
        raise ValueError("p must be an odd prime")
    field = base_field(p)
    if not field.from_int(h0):
        raise ValueError("h0 must be a unit")
    names = ("x", "y")
    x = MPoly.var(field, names, "x")
    y = MPoly.var(field, names, "y")
    h = MPoly.const(field, names, field.from_int(h0))
    u = x**p

    def v(i):
        return x ** (n * p + i) - i * h * x ** (i - 1) * y

    for i in range(1, p):
        for j in range(1, p):
            if i + j > p - 1:
                continue
            lhs = v(i) * v(j) - u**n * v(i + j)
            unit = field.from_int(i * j * h0 * h0)
            if not unit:
                return False
            rhs = MPoly.const(field, names, unit) * x ** (i + j - 2) * y**2
            if lhs != rhs:
                return False
    return True


DEGREE1_SUBSTITUTIONS = {
    "z^2 - y^3 - x1*x2*y^2": "u2^2 - u1*u3",
    "z^2 - y^3 - x1^2*y^2": "u2^2 - u1^2",
    "z^2 - y^3": "u2^2",
}


def verify_degree1(characteristic: int, equation: str) -> bool:
    """The weighted sextic models: x1 = u1, x2 = u3, y = q, z = u2 q."""
    q = DEGREE1_SUBSTITUTIONS[equation]
    return verify_parametrization(
        characteristic,
        equation,
        ("x1", "x2", "y", "z"),
        {"x1": "u1", "x2": "u3", "y": "q", "z": "u2*q", "q": q},
        ("u1", "u2", "u3"),
    )


def verify_char3_normalization(n: int, h0: int = 1) -> bool:
    """u^(3n+2) + u v1^3 + v2^3 = 0 under the Frobenius-twisted map."""
    return verify_parametrization(
        3,
        f"u^{3 * n + 2} + u*v1^3 + v2^3",
        ("u", "v1", "v2"),
        {
            "u": "x^3",
            "v1": f"x^{3 * n + 1} - {h0 % 3}*y",
            "v2": f"x^{3 * n + 2} - {(2 * h0) % 3}*x*y",
        },
        ("x", "y"),
    )


def verify_char2_normalization(n: int) -> bool:
    """u (u^(2n+1) + v^2)^2 + w^2 = 0 under (x^2, x^(2n+1)+y, x y^2)."""
    return verify_parametrization(
        2,
        f"u*(u^{2 * n + 1} + v^2)^2 + w^2",
        ("u", "v", "w"),
        {"u": "x^2", "v": f"x^{2 * n + 1} + y", "w": "x*y^2"},
        ("x", "y"),
    )


def degree12_catalog(characteristic: int = 0):
    """The degree-1 sextics and degree-2 quartics with their scenarios."""
    from dpglue.glue import glue_data

    entries = []
    for eq in DEGREE1_SUBSTITUTIONS:
        nature = {"x1*x2": "a1", "x1^2": "a2"}.get(
            next((k for k in ("x1*x2", "x1^2") if k in eq), ""), "a3"
        )
        block = building_block(nature)
        if nature == "a1":
            scen = GlueScenario(characteristic, [block], "A", name=f"degree1-{nature}")
        elif nature == "a2":
            scen = GlueScenario(
                characteristic, [block], "C",
                identifications=[{"map": [[0, 0], [1, 1], ["inf", "inf"]],
                                  "node": 0, "nodeTarget": 0}],
                name=f"degree1-{nature}",
            )
        else:
            scen = GlueScenario(
                characteristic, [block], "D",
                derivation=glue_data(characteristic, 0, ["1"]),
                name=f"degree1-{nature}",
            )
        entries.append(
            {
                "degree": 1,
                "equation": eq,
                "scenario": scen,
                "verified": verify_degree1(characteristic, eq),
            }
        )
    # degree 2: split quartic y^2 = q^2
    split = GlueScenario(
        characteristic,
        [building_block("a1"), building_block("a1")],
        "B",
        name="degree2-split",
    )
    entries.append(
        {"degree": 2, "equation": "y^2 - q^2", "scenario": split, "verified": None}
    )
    # degree 2: the five plane quartics l^2 q
    quartic_cases = [
        ("conic not tangent to l", "d0", 0, "A"),
        ("conic tangent to l", "d1", 0, "C"),
        ("line pair, vertex off l", "c0", 2, "A"),
        ("line pair, vertex on l", "c1", 2, "C"),
        ("line pair containing l", "c2", 2, "D"),
    ]
    from dpglue.glue import glue_data as _gd

    for desc, tag, a, fam in quartic_cases:
        block = building_block(tag, a)
        if fam == "A":
            scen = GlueScenario(characteristic, [block], "A",
                                name=f"degree2-{tag}")
        elif fam == "C":
            scen = GlueScenario(
                characteristic, [block], "C",
                identifications=[{"map": [[0, 0], [1, 1], ["inf", "inf"]],
                                  "node": 0, "nodeTarget": 0}],
                name=f"degree2-{tag}",
            )
        else:
            scen = GlueScenario(characteristic, [block], "D",
                                derivation=_gd(characteristic, 0, ["1"]),
                                name=f"degree2-{tag}")
        entries.append(
            {
                "degree": 2,
                "equation": f"y^2 - l^2*q  ({desc})",
                "scenario": scen,
                "verified": None,
            }
        )
    return entries
