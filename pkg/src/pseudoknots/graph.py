"""Port-level working representation of pseudodiagrams.

A :class:`PortGraph` holds sites whose four slots are *ports*, numbered
counterclockwise, together with a perfect matching of ports (the edges).
Slot 0 is the designated incoming slot: for a classical crossing the
under-strand enters at slot 0 and leaves at slot 2; the over-strand
occupies slots 1 and 3 and its direction encodes the crossing sign
(positive: enters slot 3, negative: enters slot 1).  Precrossings carry
the slot 1/3 strand direction as an explicit flag.

All diagram surgery (Reidemeister rewrites, tangle insertion, closures,
connected sums) happens here; the public, immutable, edge-numbered
:class:`~pseudoknots.diagram.Pseudodiagram` is produced by
:meth:`PortGraph.to_diagram`, which renumbers edges canonically.

A tangle fragment is a PortGraph with one *boundary* pseudo-site whose
four slots stand for the SW, SE, NE, NW legs.
"""

from __future__ import annotations

from enum import Enum

from .errors import OrientationMismatch, ValidationError

BOUNDARY = -1
# boundary slot order is counterclockwise, matching insertion frames
SW, SE, NE, NW = 0, 1, 2, 3


class SiteKind(Enum):
    POS = "+"
    NEG = "-"
    PRE = "P"


class GSite:
    """Mutable site record.  ``kind`` is None while a freshly inserted
    classical crossing has not had its sign resolved from orientations."""

    __slots__ = ("kind", "strand2_forward")

    def __init__(self, kind, strand2_forward=None):
        self.kind = kind
        if kind is SiteKind.POS:
            strand2_forward = False
        elif kind is SiteKind.NEG:
            strand2_forward = True
        self.strand2_forward = strand2_forward

    def copy(self):
        return GSite(self.kind, self.strand2_forward)


def strand_partner(slot: int) -> int:
    return slot ^ 2


class PortGraph:
    def __init__(self):
        self.sites: dict[int, GSite] = {}
        self.pair: dict[tuple[int, int], tuple[int, int]] = {}
        self.free_loops = 0
        self._next_id = 0

    # -- construction ---------------------------------------------------

    def copy(self) -> "PortGraph":
        g = PortGraph()
        g.sites = {i: s.copy() for i, s in self.sites.items()}
        g.pair = dict(self.pair)
        g.free_loops = self.free_loops
        g._next_id = self._next_id
        return g

    def new_site(self, kind, strand2_forward=None) -> int:
        sid = self._next_id
        self._next_id += 1
        self.sites[sid] = GSite(kind, strand2_forward)
        return sid

    def add_boundary(self):
        if BOUNDARY in self.sites:
            raise ValueError("fragment already has a boundary")
        self.sites[BOUNDARY] = GSite(None)

    def connect(self, p, q):
        if p in self.pair or q in self.pair:
            raise ValueError(f"port already connected: {p} or {q}")
        if p == q:
            raise ValueError("cannot connect a port to itself")
        self.pair[p] = q
        self.pair[q] = p

    def disconnect(self, p):
        q = self.pair.pop(p)
        self.pair.pop(q)
        return q

    def ports_of(self, sid):
        return [(sid, slot) for slot in range(4)]

    # -- orientation roles ------------------------------------------------

    def port_role(self, port):
        """'in', 'out', or None when the direction is still unresolved.

        Boundary ports have no intrinsic role.
        """
        sid, slot = port
        if sid == BOUNDARY:
            return None
        site = self.sites[sid]
        if slot == 0:
            return "in"
        if slot == 2:
            return "out"
        fwd = site.strand2_forward
        if fwd is None:
            return None
        if slot == 1:
            return "in" if fwd else "out"
        return "out" if fwd else "in"

    def resolve_orientations(self):
        """Assign directions to every unresolved slot-1/3 strand.

        Propagates the rule that every edge joins an out-port to an
        in-port.  Remaining genuinely free strands default to forward,
        lowest site id first.  Classical sites with undetermined kind get
        their sign from the resolved direction.  Raises
        OrientationMismatch when no assignment works.
        """
        pending = {
            sid for sid, s in self.sites.items()
            if sid != BOUNDARY and s.strand2_forward is None
        }
        queue = [p for p in self.pair if self.port_role(p) is not None]
        while pending:
            while queue:
                p = queue.pop()
                role = self.port_role(p)
                if role is None:
                    continue
                q = self.pair[p]
                qsid, qslot = q
                want = "out" if role == "in" else "in"
                qrole = self.port_role(q)
                if qrole is not None:
                    if qrole != want:
                        raise OrientationMismatch(
                            "orientation mismatch: inconsistent strand directions"
                        )
                    continue
                if qsid == BOUNDARY:
                    continue
                if qslot in (1, 3):
                    site = self.sites[qsid]
                    fwd = (want == "in") if qslot == 1 else (want == "out")
                    site.strand2_forward = fwd
                    pending.discard(qsid)
                    partner = (qsid, strand_partner(qslot))
                    if partner in self.pair:
                        queue.append(partner)
                    queue.append(q)
            if pending:
                sid = min(pending)
                self.sites[sid].strand2_forward = True
                pending.discard(sid)
                for slot in (1, 3):
                    if (sid, slot) in self.pair:
                        queue.append((sid, slot))
        # final consistency sweep and sign assignment
        for p, q in self.pair.items():
            rp, rq = self.port_role(p), self.port_role(q)
            if rp is None or rq is None:
                if p[0] == BOUNDARY or q[0] == BOUNDARY:
                    continue
                raise OrientationMismatch("orientation mismatch: unresolved strand")
            if rp == rq:
                raise OrientationMismatch(
                    "orientation mismatch: strand carries two directions"
                )
        for sid, site in self.sites.items():
            if sid == BOUNDARY or site.kind is SiteKind.PRE:
                continue
            computed = SiteKind.NEG if site.strand2_forward else SiteKind.POS
            if site.kind is None:
                site.kind = computed
            elif site.kind is not computed:
                raise ValidationError(
                    f"declared sign {site.kind.value} inconsistent with orientation"
                )

    # -- surgery -----------------------------------------------------------

    def dissolve(self, arcs_by_site: dict[int, list[tuple[int, int]]]):
        """Remove sites, joining the listed slot pairs through each of them.

        Strand segments that close up entirely inside the removed region
        become free loops.
        """
        through = {}
        for sid, arcs in arcs_by_site.items():
            for a, b in arcs:
                through[(sid, a)] = (sid, b)
                through[(sid, b)] = (sid, a)
        removed_ports = set(through)
        for sid in arcs_by_site:
            for slot in range(4):
                port = (sid, slot)
                if port in self.pair and port not in removed_ports:
                    raise ValueError(f"port {port} not covered by dissolve arcs")

        consumed = set()

        def chase(start):
            # start is a removed port; walk through virtual arcs and edges
            port = start
            while True:
                consumed.add(port)
                port = through[port]
                consumed.add(port)
                nxt = self.pair.get(port)
                if nxt is None:
                    return None  # dangling (should not happen on closed graphs)
                if nxt not in removed_ports:
                    return nxt
                port = nxt

        # reconnect strands that leave the removed region
        for port in list(self.pair):
            if port in removed_ports or port not in self.pair:
                continue
            far = self.pair[port]
            if far not in removed_ports:
                continue
            other = chase(far)
            self.disconnect(port)
            if other is not None:
                if other in self.pair:
                    self.disconnect(other)
                self.connect(port, other)
        # count loops fully inside the removed region
        for port in list(removed_ports):
            if port in consumed:
                continue
            self.free_loops += 1
            walker = port
            while walker not in consumed:
                consumed.add(walker)
                walker = through[walker]
                consumed.add(walker)
                partner = self.pair.get(walker)
                if partner is None:
                    break
                if partner in self.pair:
                    self.disconnect(walker)
                walker = partner
        for sid in arcs_by_site:
            del self.sites[sid]

    def flip_site(self, sid):
        """Swap over and under strands of a classical crossing in place."""
        site = self.sites[sid]
        if site.kind is SiteKind.PRE:
            raise ValueError("cannot flip a precrossing")
        # new listing starts at the old over-in slot
        start = 3 if site.kind is SiteKind.POS else 1
        self._rotate_site(sid, start)
        site.kind = SiteKind.NEG if site.kind is SiteKind.POS else SiteKind.POS
        site.strand2_forward = site.kind is SiteKind.NEG

    def _rotate_site(self, sid, start):
        """Relabel slots so old slot ``start`` becomes slot 0."""
        moves = {}
        for slot in range(4):
            old = (sid, (start + slot) % 4)
            if old in self.pair:
                moves[slot] = self.pair[old]
        for slot in range(4):
            old = (sid, (start + slot) % 4)
            if old in self.pair:
                self.disconnect(old)
        for slot, far in moves.items():
            target = far
            if target[0] == sid:
                # edge loops back to the same site: remap its far end too
                target = (sid, (target[1] - start) % 4)
                if target in self.pair or (sid, slot) in self.pair:
                    continue
            self.connect((sid, slot), target)

    def mirror(self):
        for sid, site in list(self.sites.items()):
            if sid == BOUNDARY or site.kind is SiteKind.PRE:
                continue
            self.flip_site(sid)

    # -- traversal and export ----------------------------------------------

    def _site_order(self):
        return sorted(sid for sid in self.sites if sid != BOUNDARY)

    def strands(self):
        """Iterate oriented edges as (tail_port, head_port) pairs."""
        for p, q in self.pair.items():
            if self.port_role(p) == "out":
                yield p, q

    def component_edges(self):
        """Split edges into oriented cycles (components), deterministically.

        Returns a list of edge lists, each edge a (tail, head) port pair,
        in traversal order; components sorted by their smallest tail port
        (using site file order), starting at that edge.
        """
        order = {sid: i for i, sid in enumerate(self._site_order())}

        def key(port):
            sid, slot = port
            if sid == BOUNDARY:
                raise ValidationError("cannot number a fragment with open legs")
            return (order[sid], slot)

        tails = {}
        for p, q in self.pair.items():
            if self.port_role(p) == "out":
                tails[p] = q
        components = []
        seen = set()
        for tail in sorted(tails, key=key):
            if tail in seen:
                continue
            cycle = []
            t = tail
            while t not in seen:
                seen.add(t)
                head = tails[t]
                cycle.append((t, head))
                t = (head[0], strand_partner(head[1]))
                if self.port_role(t) != "out":
                    raise ValidationError("strand does not continue through site")
            components.append(cycle)
        return components

    def to_diagram(self, name=None):
        """Freeze into a canonically renumbered, validated Pseudodiagram."""
        from .diagram import Pseudodiagram, Site

        self.resolve_orientations()
        components = self.component_edges()
        label = {}
        ranges = []
        next_label = 1
        for cycle in components:
            lo = next_label
            for tail, head in cycle:
                label[tail] = next_label
                label[head] = next_label
                next_label += 1
            ranges.append((lo, next_label - 1))
        sites = []
        for sid in self._site_order():
            site = self.sites[sid]
            slots = tuple(label[(sid, slot)] for slot in range(4))
            sites.append(Site(site.kind, slots))
        return Pseudodiagram(
            tuple(sites), tuple(ranges), self.free_loops, name, _trusted=True
        )
