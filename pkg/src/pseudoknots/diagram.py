"""Oriented pseudodiagrams: extended PD codes with precrossings.

File format (UTF-8 text)::

    name: <free text>            (optional)
    loops: <k>                   (optional, default 0: crossing-free unknots)
    components: <lo-hi>[; <lo-hi>]*
    pd: X+[a,b,c,d] X-[a,b,c,d] P[a,b,c,d] ...

Slot convention: ``X[a,b,c,d]`` lists the four incident edges
counterclockwise starting at the incoming under-edge ``a``; the
under-strand runs a -> c.  If the over-strand enters at ``d``
(``succ(d) = b``) the crossing is positive, if it enters at ``b`` it is
negative.  The explicit ``X+``/``X-`` marker must agree with the sign
computed from the orientation; the redundancy catches transcription
errors.  ``P[a,b,c,d]`` is a precrossing with strands a-c and b-d and no
over/under data; slot ``a`` is an incoming edge.  For tangle insertion
the local boundary is addressed a->SW, b->SE, c->NE, d->NW.

Edges are numbered consecutively along each component with wraparound,
in the declared ``components`` ranges.  Where the numbering leaves a
strand direction genuinely ambiguous (this can happen at precrossings on
two-edge components), parsing resolves it deterministically, preferring
the b -> d direction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DiagramParseError, DomainError, KnotError, ValidationError
from .graph import BOUNDARY, GSite, PortGraph, SiteKind, strand_partner

__all__ = [
    "Site",
    "SiteKind",
    "Pseudodiagram",
    "parse_diagram",
    "serialize_diagram",
    "writhe",
    "mirror",
    "connected_sum",
    "to_precrossing",
]


@dataclass(frozen=True)
class Site:
    kind: SiteKind
    slots: tuple[int, int, int, int]

    def is_pre(self) -> bool:
        return self.kind is SiteKind.PRE

    def sign(self) -> int:
        if self.kind is SiteKind.POS:
            return 1
        if self.kind is SiteKind.NEG:
            return -1
        raise DomainError("precrossings have no sign")

    def __str__(self):
        body = ",".join(str(s) for s in self.slots)
        head = "P" if self.is_pre() else f"X{self.kind.value}"
        return f"{head}[{body}]"


@dataclass(frozen=True, eq=False)
class Pseudodiagram:
    """Validated pseudodiagram; immutable after construction.

    ``components`` holds inclusive edge-label ranges, one per link
    component; ``free_loops`` counts crossing-free unknot components,
    which PD codes cannot express.
    """

    sites: tuple[Site, ...]
    components: tuple[tuple[int, int], ...]
    free_loops: int = 0
    name: str | None = None
    _trusted: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self.free_loops < 0:
            raise ValidationError("free_loops must be nonnegative")
        if not self._trusted:
            _validate(self)
            object.__setattr__(self, "_trusted", True)

    # -- basic views ----------------------------------------------------

    def n_sites(self) -> int:
        return len(self.sites)

    def pre_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.sites) if s.is_pre()]

    def n_pre(self) -> int:
        return len(self.pre_indices())

    def n_classical(self) -> int:
        return len(self.sites) - self.n_pre()

    def is_empty(self) -> bool:
        return not self.sites and self.free_loops == 0

    def edge_labels(self):
        for lo, hi in self.components:
            yield from range(lo, hi + 1)

    def succ(self, edge: int) -> int:
        for lo, hi in self.components:
            if lo <= edge <= hi:
                return lo if edge == hi else edge + 1
        raise KnotError(f"edge label {edge} not present")

    def component_of(self, edge: int) -> int:
        for i, (lo, hi) in enumerate(self.components):
            if lo <= edge <= hi:
                return i
        raise KnotError(f"edge label {edge} not present")

    def __eq__(self, other):
        if not isinstance(other, Pseudodiagram):
            return NotImplemented
        return (
            self.sites == other.sites
            and self.components == other.components
            and self.free_loops == other.free_loops
        )

    def __hash__(self):
        return hash((self.sites, self.components, self.free_loops))

    def __str__(self):
        return serialize_diagram(self)

    # -- conversion to the working representation ------------------------

    def to_graph(self) -> tuple[PortGraph, dict[int, tuple]]:
        """Build the port graph plus a map edge label -> (tail, head) port."""
        g = PortGraph()
        occurrences: dict[int, list] = {}
        for idx, site in enumerate(self.sites):
            sid = g.new_site(site.kind, _strand2_forward_hint(self, idx))
            assert sid == idx
            for slot, label in enumerate(site.slots):
                occurrences.setdefault(label, []).append((sid, slot))
        for label, ports in occurrences.items():
            g.connect(ports[0], ports[1])
        g.free_loops = self.free_loops
        g.resolve_orientations()
        edge_ports = {}
        for label, ports in occurrences.items():
            tail = ports[0] if g.port_role(ports[0]) == "out" else ports[1]
            edge_ports[label] = (tail, (set(ports) - {tail}).pop() if ports[0] != ports[1] else ports[1])
        return g, edge_ports

    def strand2_direction(self, index: int) -> bool:
        """True when the slot-1 edge of site ``index`` is incoming."""
        site = self.sites[index]
        hint = _strand2_forward_hint(self, index)
        if hint is not None:
            return hint
        g, _ = self.to_graph()
        return g.sites[index].strand2_forward


def _strand2_forward_hint(diagram: Pseudodiagram, index: int) -> bool | None:
    """Direction of the slot-1/3 strand where the numbering decides it."""
    site = diagram.sites[index]
    if site.kind is SiteKind.POS:
        return False
    if site.kind is SiteKind.NEG:
        return True
    _, b, _, d = site.slots
    fwd = diagram.succ(b) == d
    bwd = diagram.succ(d) == b
    if fwd and bwd:
        return None
    if fwd:
        return True
    if bwd:
        return False
    raise ValidationError(
        f"precrossing {site} has no orientation consistent with the edge numbering"
    )


def _validate(diagram: Pseudodiagram):
    ranges = list(diagram.components)
    seen_labels = set()
    for lo, hi in ranges:
        if lo > hi:
            raise ValidationError(f"bad component range {lo}-{hi}")
        for e in range(lo, hi + 1):
            if e in seen_labels:
                raise ValidationError(f"edge label {e} in two component ranges")
            seen_labels.add(e)
    counts: dict[int, int] = {}
    for site in diagram.sites:
        for label in site.slots:
            if label not in seen_labels:
                raise ValidationError(f"edge label {label} outside component ranges")
            counts[label] = counts.get(label, 0) + 1
    for label in seen_labels:
        if counts.get(label, 0) != 2:
            raise ValidationError(
                f"edge label {label} appears {counts.get(label, 0)} times, expected 2"
            )
    for idx, site in enumerate(diagram.sites):
        a, b, c, d = site.slots
        if diagram.succ(a) != c:
            raise ValidationError(
                f"site {site}: under/through strand must run a->c with succ(a)=c"
            )
        if site.kind is SiteKind.POS and diagram.succ(d) != b:
            raise ValidationError(
                f"site {site}: declared sign + inconsistent with orientation"
            )
        if site.kind is SiteKind.NEG and diagram.succ(b) != d:
            raise ValidationError(
                f"site {site}: declared sign - inconsistent with orientation"
            )
        if site.kind is SiteKind.PRE:
            _strand2_forward_hint(diagram, idx)  # raises when impossible
    # global orientation consistency (each edge one head, one tail)
    diagram.to_graph()


# ---------------------------------------------------------------------------
# text format


_SITE_RE = re.compile(r"(X\+|X-|P)\[(-?\d+),(-?\d+),(-?\d+),(-?\d+)\]")


def parse_diagram(text: str) -> Pseudodiagram:
    name = None
    loops = 0
    components = None
    sites = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise DiagramParseError(f"expected 'key: value', got {line!r}")
        key = key.strip().lower()
        value = value.strip()
        if key == "name":
            name = value
        elif key == "loops":
            try:
                loops = int(value)
            except ValueError:
                raise DiagramParseError(f"bad loops count {value!r}") from None
        elif key == "components":
            components = []
            if value:
                for part in value.split(";"):
                    part = part.strip()
                    m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", part)
                    if not m:
                        raise DiagramParseError(f"bad component range {part!r}")
                    components.append((int(m.group(1)), int(m.group(2))))
        elif key == "pd":
            sites = []
            pos = 0
            value = value.strip()
            while pos < len(value):
                if value[pos].isspace():
                    pos += 1
                    continue
                m = _SITE_RE.match(value, pos)
                if not m:
                    raise DiagramParseError(f"bad site at {value[pos:pos+24]!r}")
                kind = {
                    "X+": SiteKind.POS,
                    "X-": SiteKind.NEG,
                    "P": SiteKind.PRE,
                }[m.group(1)]
                slots = tuple(int(m.group(i)) for i in range(2, 6))
                sites.append(Site(kind, slots))
                pos = m.end()
        else:
            raise DiagramParseError(f"unknown header {key!r}")
    if components is None:
        raise DiagramParseError("missing 'components:' line")
    if sites is None:
        raise DiagramParseError("missing 'pd:' line")
    return Pseudodiagram(tuple(sites), tuple(components), loops, name)


def serialize_diagram(diagram: Pseudodiagram) -> str:
    """Canonical text form: edges renumbered deterministically.

    ``serialize . parse`` is a fixed point after one application.
    """
    g, _ = diagram.to_graph()
    canonical = g.to_diagram(diagram.name)
    lines = []
    if canonical.name:
        lines.append(f"name: {canonical.name}")
    if canonical.free_loops:
        lines.append(f"loops: {canonical.free_loops}")
    lines.append(
        "components: " + "; ".join(f"{lo}-{hi}" for lo, hi in canonical.components)
    )
    lines.append("pd: " + " ".join(str(s) for s in canonical.sites))
    return "\n".join(lines) + "\n"


def canonical_form(diagram: Pseudodiagram) -> Pseudodiagram:
    g, _ = diagram.to_graph()
    return g.to_diagram(diagram.name)


# ---------------------------------------------------------------------------
# basic operations


def writhe(diagram: Pseudodiagram) -> int:
    """Sum of crossing signs; undefined in the presence of precrossings."""
    if diagram.n_pre():
        raise DomainError("writhe undefined for pseudodiagrams")
    return sum(site.sign() for site in diagram.sites)


def mirror(diagram: Pseudodiagram) -> Pseudodiagram:
    """Swap every over/under crossing; precrossings are unchanged."""
    g, _ = diagram.to_graph()
    g.mirror()
    return g.to_diagram(diagram.name)


def connected_sum(
    d1: Pseudodiagram, e1: int, d2: Pseudodiagram, e2: int
) -> Pseudodiagram:
    """Splice edge ``e1`` of ``d1`` to edge ``e2`` of ``d2``.

    The two host components merge; orientations are joined consistently.
    """
    if e1 not in set(d1.edge_labels()):
        raise KnotError(f"edge label {e1} not present")
    if e2 not in set(d2.edge_labels()):
        raise KnotError(f"edge label {e2} not present")
    g1, ports1 = d1.to_graph()
    g2, ports2 = d2.to_graph()
    offset = len(d1.sites)
    merged = PortGraph()
    merged.free_loops = d1.free_loops + d2.free_loops
    for sid in sorted(g1.sites):
        merged.sites[sid] = g1.sites[sid].copy()
    for sid in sorted(g2.sites):
        merged.sites[sid + offset] = g2.sites[sid].copy()
    merged._next_id = offset + len(g2.sites)
    for p, q in g1.strands():
        merged.connect(p, q)
    for p, q in g2.strands():
        merged.connect((p[0] + offset, p[1]), (q[0] + offset, q[1]))
    tail1, head1 = ports1[e1]
    tail2, head2 = ports2[e2]
    tail2 = (tail2[0] + offset, tail2[1])
    head2 = (head2[0] + offset, head2[1])
    merged.disconnect(tail1)
    merged.disconnect(tail2)
    merged.connect(tail1, head2)
    merged.connect(tail2, head1)
    name = None
    if d1.name and d2.name:
        name = f"{d1.name} # {d2.name}"
    return merged.to_diagram(name)


def to_precrossing(diagram: Pseudodiagram, indices) -> Pseudodiagram:
    """Forget over/under data at the given classical sites."""
    g, _ = diagram.to_graph()
    for idx in indices:
        site = g.sites[idx]
        if site.kind is SiteKind.PRE:
            raise DomainError(f"site {idx} is already a precrossing")
        site.kind = SiteKind.PRE
    return g.to_diagram(diagram.name)
