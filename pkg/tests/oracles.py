"""Independent oracles and random generators shared by the test suite.

The enumeration oracle brute-forces every full assignment over all
alternatives, canonicalizes each to its reachable sub-assignment,
deduplicates, and drops assignments that use a disabled alternative. It
never calls the enumeration under test.
"""

from __future__ import annotations

import itertools
import random

from vxl import nodes as N
from vxl.universes import AltInfo, VariationTree, VpInfo


def oracle_universe_set(vt: VariationTree) -> set:
    """Set of frozenset(assignment.items()) per the brute-force recipe."""
    if not vt.nodes:
        return {frozenset()}
    index_ranges = [range(len(vp.alternatives)) for vp in vt.nodes]
    out = set()
    for combo in itertools.product(*index_ranges):
        full = {vp.vp_id: combo[i] for i, vp in enumerate(vt.nodes)}
        kept = {}
        for vp in vt.nodes:  # parents precede children in document order
            if vp.parent is None:
                kept[vp.vp_id] = full[vp.vp_id]
            else:
                parent_id, alt_index = vp.parent
                if kept.get(parent_id) == alt_index:
                    kept[vp.vp_id] = full[vp.vp_id]
        by_id = vt.by_id()
        if any(by_id[vp_id].alternatives[idx].disabled
               for vp_id, idx in kept.items()):
            continue
        out.add(frozenset(kept.items()))
    return out


def random_variation_tree(rng: random.Random, max_vps=5, max_alts=3,
                          max_depth=3) -> VariationTree:
    """Random forest of variation points with random disabled flags; every
    variation keeps at least one enabled alternative and an enabled active."""
    vt = VariationTree()
    n = rng.randint(1, max_vps)
    depths = {}
    for i in range(n):
        vp_id = f"v{i + 1}"
        n_alts = rng.randint(2, max_alts)
        disabled = [rng.random() < 0.25 for _ in range(n_alts)]
        if all(disabled):
            disabled[rng.randrange(n_alts)] = False
        enabled = [k for k, d in enumerate(disabled) if not d]
        parent = None
        depth = 1
        candidates = [vp for vp in vt.nodes if depths[vp.vp_id] < max_depth]
        if candidates and rng.random() < 0.5:
            parent_vp = rng.choice(candidates)
            parent = (parent_vp.vp_id,
                      rng.randrange(len(parent_vp.alternatives)))
            depth = depths[parent_vp.vp_id] + 1
        vp = VpInfo(
            vp_id=vp_id,
            display_name=vp_id,
            active_index=rng.choice(enabled),
            alternatives=[AltInfo(f"{vp_id}a{k}", disabled[k])
                          for k in range(n_alts)],
            parent=parent,
        )
        if parent is not None:
            parent_vp.alternatives[parent[1]] \
                .contained_variation_ids.append(vp_id)
        depths[vp_id] = depth
        vt.nodes.append(vp)
    return vt


class ProgramGenerator:
    """Random VXL programs with variations and probes, built as trees so
    marker ids stay unique and alternative blocks stay expression-valued."""

    def __init__(self, rng: random.Random, max_variations=4, max_probes=4,
                 allow_errors=False):
        self.rng = rng
        self.max_variations = max_variations
        self.max_probes = max_probes
        self.allow_errors = allow_errors
        self.n_variations = 0
        self.n_probes = 0

    def num(self):
        return N.Num(float(self.rng.randint(0, 9)))

    def leaf(self):
        r = self.rng.random()
        if r < 0.5:
            return self.num()
        return N.Ident(self.rng.choice(["a", "b"]))

    def expr(self, depth: int):
        rng = self.rng
        if depth <= 0:
            return self.leaf()
        r = rng.random()
        if r < 0.25 and self.n_variations < self.max_variations:
            return self.variation(depth)
        if r < 0.45 and self.n_probes < self.max_probes:
            self.n_probes += 1
            return N.Probe(f"p{self.n_probes}", self.expr(depth - 1))
        if r < 0.85:
            op = rng.choice(["+", "-", "*", "+", "-"])
            if self.allow_errors and rng.random() < 0.15:
                # may divide by zero depending on the chosen alternative
                return N.Binary("/", self.expr(depth - 1),
                                N.Binary("-", self.expr(depth - 1),
                                         self.num()))
            return N.Binary(op, self.expr(depth - 1), self.expr(depth - 1))
        if r < 0.92:
            return N.Call("abs", [N.Arg(None, self.expr(depth - 1))])
        return self.leaf()

    def variation(self, depth: int):
        rng = self.rng
        self.n_variations += 1
        vid = f"v{self.n_variations}"
        n_alts = rng.randint(2, 3)
        alts = []
        disabled = [rng.random() < 0.2 for _ in range(n_alts)]
        if all(disabled):
            disabled[rng.randrange(n_alts)] = False
        for k in range(n_alts):
            alts.append(N.Alt(f"{vid}alt{k}", disabled[k],
                              N.Block([], self.expr(depth - 1))))
        enabled = [k for k, d in enumerate(disabled) if not d]
        return N.Variation(vid, rng.choice(enabled), "", alts)

    def program(self) -> N.Program:
        rng = self.rng
        body_stmts = [
            N.Let("a", self.num()),
            N.Let("b", self.num()),
        ]
        if rng.random() < 0.4:
            # bounded loop with a probed accumulator
            body_stmts.append(N.Let("i", N.Num(0.0)))
            body_stmts.append(N.Let("acc", N.Num(0.0)))
            loop_body = N.Block([
                N.Assign("acc", N.Binary("+", N.Ident("acc"),
                                         self.expr(2))),
                N.Assign("i", N.Binary("+", N.Ident("i"), N.Num(1.0))),
            ], None)
            body_stmts.append(
                N.While(N.Binary("<", N.Ident("i"),
                                 N.Num(float(rng.randint(1, 4)))),
                        loop_body))
            tail = N.Ident("acc")
        else:
            tail = self.expr(3)
        return N.Program([N.ExampleDef("main", N.Block(body_stmts, tail))])


def random_program(seed_or_rng, allow_errors=False) -> N.Program:
    from vxl.markers import normalize

    rng = (seed_or_rng if isinstance(seed_or_rng, random.Random)
           else random.Random(seed_or_rng))
    gen = ProgramGenerator(rng, allow_errors=allow_errors)
    return normalize(gen.program())


def strip_probes(tree: N.Program) -> N.Program:
    """Replace every probe node by its operand; independent of cleanup."""
    import copy

    from vxl.markers import normalize

    def resolve(node):
        clone = copy.copy(node)
        for name in ("items", "stmts", "args", "alts"):
            if hasattr(clone, name):
                setattr(clone, name, [resolve(c) for c in getattr(clone, name)])
        for name in ("body", "expr", "cond", "then", "orelse", "tail",
                     "operand", "left", "right", "obj", "index", "block",
                     "original", "replacement"):
            if hasattr(clone, name):
                child = getattr(clone, name)
                if child is not None and not isinstance(child, (str, int,
                                                                float, bool)):
                    setattr(clone, name, resolve(child))
        if isinstance(clone, N.Probe):
            return clone.operand
        return clone

    return normalize(resolve(tree))
