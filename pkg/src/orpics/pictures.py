"""Combinatorial pictures over a one-relator product.

A picture is stored as a rotation system: vertices carry a clockwise list
of arc-ends (darts) and one corner letter in each gap between consecutive
darts; the disc boundary is a virtual site whose darts are listed
anticlockwise with a (possibly empty) letter word in each gap.  Faces are
traced combinatorially, so surface consistency is an Euler-characteristic
check rather than geometry.

Face-trace convention: from the corner after dart ``rotation[i]`` the walk
travels along that arc and enters the corner before the arrival dart.
Corner letters multiplied in trace order make up the region label.
"""

from dataclasses import dataclass, field

from . import gtg
from .freeprod import FpWord

SPHERE = "sphere"
DISC = "disc"

BOUNDARY = "__boundary__"


class PictureError(ValueError):
    code = "PICTURE_ERROR"


class IllegalMove(PictureError):
    code = "ILLEGAL_MOVE"


class NotSimplyConnected(PictureError):
    code = "NOT_SIMPLY_CONNECTED"


class NotReducedPicture(PictureError):
    code = "NOT_REDUCED"


@dataclass
class Vertex:
    sign: int
    rotation: list
    corners: list  # FpLetter or None, corners[i] sits after rotation[i]

    def degree(self):
        return len(self.rotation)


class Picture:
    """Mutable while being built; freeze() computes placement and faces."""

    def __init__(self, fp, surface=DISC, kind="picture"):
        self.fp = fp
        self.surface = surface
        self.kind = kind
        self.vertices = {}
        self.arcs = {}         # arc id -> (dart, dart); dart is any hashable id
        self.boundary = []     # darts anticlockwise around the disc boundary
        self.gaps = []         # tuple of FpLetters per gap, gaps[i] after boundary[i]
        self.members = {}      # clique quotient bookkeeping: name -> [(vertex, sign)]
        self._frozen = False
        self._place = None
        self._faces = None
        self._face_of = None

    # -- construction ------------------------------------------------------

    def add_vertex(self, name, sign, rotation, corners):
        if self._frozen:
            raise PictureError("picture is frozen")
        if len(rotation) != len(corners):
            raise PictureError("rotation and corners length mismatch at %s" % name)
        self.vertices[name] = Vertex(sign, list(rotation), list(corners))
        return self

    def add_arc(self, arc_id, dart0, dart1):
        if self._frozen:
            raise PictureError("picture is frozen")
        self.arcs[arc_id] = (dart0, dart1)
        return self

    def set_boundary(self, darts, gaps=None):
        if self._frozen:
            raise PictureError("picture is frozen")
        self.boundary = list(darts)
        self.gaps = [tuple(g) for g in gaps] if gaps else [()] * len(self.boundary)
        if len(self.gaps) != len(self.boundary):
            raise PictureError("one gap word required per boundary dart")
        return self

    def copy(self):
        out = Picture(self.fp, self.surface, self.kind)
        for name, v in self.vertices.items():
            out.add_vertex(name, v.sign, list(v.rotation), list(v.corners))
        for aid, pair in self.arcs.items():
            out.add_arc(aid, *pair)
        out.set_boundary(list(self.boundary), [tuple(g) for g in self.gaps])
        out.members = {k: list(v) for k, v in self.members.items()}
        return out

    # -- derived structure ---------------------------------------------------

    def freeze(self):
        place = {}
        for name, v in self.vertices.items():
            for i, dart in enumerate(v.rotation):
                if dart in place:
                    raise PictureError("dart %r placed twice" % (dart,))
                place[dart] = (name, i)
        for i, dart in enumerate(self.boundary):
            if dart in place:
                raise PictureError("dart %r placed twice" % (dart,))
            place[dart] = (BOUNDARY, i)
        darts_in_arcs = [d for pair in self.arcs.values() for d in pair]
        if len(set(darts_in_arcs)) != len(darts_in_arcs):
            raise PictureError("a dart belongs to two arcs")
        if set(darts_in_arcs) != set(place):
            raise PictureError("placed darts and arc ends disagree")
        self._place = place
        self._other = {}
        for d0, d1 in self.arcs.values():
            self._other[d0] = d1
            self._other[d1] = d0
        self._trace_faces()
        self._frozen = True
        return self

    def _site_rotation(self, site):
        if site == BOUNDARY:
            return self.boundary
        return self.vertices[site].rotation

    def _corner_value(self, site, i):
        """Letters in the gap: a tuple (vertex corners hold 0 or 1 letters)."""
        if site == BOUNDARY:
            return self.gaps[i]
        z = self.vertices[site].corners[i]
        return () if z is None else (z,)

    def _next_corner(self, site, i):
        dart = self._site_rotation(site)[i]
        other = self._other[dart]
        site2, j = self._place[other]
        deg = len(self._site_rotation(site2))
        return (site2, (j - 1) % deg)

    def _trace_faces(self):
        faces = []
        face_of = {}
        seen = set()
        corners = [(name, i) for name, v in self.vertices.items()
                   for i in range(v.degree())]
        corners += [(BOUNDARY, i) for i in range(len(self.boundary))]
        for start in corners:
            if start in seen:
                continue
            face = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                cur = self._next_corner(*cur)
            if cur != start:
                raise PictureError("face trace did not close at %r" % (start,))
            idx = len(faces)
            faces.append(face)
            for c in face:
                face_of[c] = idx
        self._faces = faces
        self._face_of = face_of

    def faces(self):
        return self._faces

    def face_of(self, corner):
        return self._face_of[corner]

    def arc_sides(self, arc_id):
        """Faces on the two sides of an arc, via the gaps after/before its
        first dart."""
        d0, _ = self.arcs[arc_id]
        site, i = self._place[d0]
        deg = len(self._site_rotation(site))
        return (self._face_of[(site, i)], self._face_of[(site, (i - 1) % deg)])

    def face_letters(self, face_idx):
        out = []
        for site, i in self._faces[face_idx]:
            out.extend(self._corner_value(site, i))
        return tuple(out)

    def face_touches_boundary(self, face_idx):
        return any(site == BOUNDARY for site, _ in self._faces[face_idx])

    def boundary_label_letters(self):
        out = []
        for g in self.gaps:
            out.extend(g)
        return tuple(out)

    def vertex_label(self, name, start_slot=0):
        v = self.vertices[name]
        deg = v.degree()
        return tuple(v.corners[(start_slot + t) % deg] for t in range(deg))

    def label_from_dart(self, dart):
        """Vertex label read clockwise starting right after the given dart."""
        site, i = self._place[dart]
        if site == BOUNDARY:
            raise PictureError("dart %r is on the boundary" % (dart,))
        return site, self.vertex_label(site, i)

    def connected(self):
        """Vertices-and-arcs connectivity; boundary does not glue components."""
        if not self.vertices:
            return True
        names = list(self.vertices)
        reach = {names[0]}
        frontier = [names[0]]
        while frontier:
            name = frontier.pop()
            for dart in self.vertices[name].rotation:
                site, _ = self._place[self._other[dart]]
                if site != BOUNDARY and site not in reach:
                    reach.add(site)
                    frontier.append(site)
        return reach == set(self.vertices)


# -- validation --------------------------------------------------------------


def _rotations_of(letters):
    n = len(letters)
    return {tuple(letters[j:] + letters[:j]) for j in range(n)}


def _involute_letters(fp, letters):
    return tuple(fp.invert_letter(z) for z in reversed(letters))


def validate(pic, desc):
    """Check the picture axioms; violations are returned as data."""
    if not pic._frozen:
        pic.freeze()
    violations = []
    fp = pic.fp
    if not pic.vertices and not pic.arcs:
        return {"violations": [], "euler": None, "valid": True}

    # surface: the traced map closes up into a sphere (the disc boundary is
    # one extra site)
    n_sites = len(pic.vertices) + (1 if pic.boundary else 0)
    euler = n_sites - len(pic.arcs) + len(pic.faces())
    if euler != 2:
        violations.append({"code": "SURFACE", "where": "map",
                           "detail": "V-E+F = %d" % euler})

    # vertex labels spell rotations of the relator power
    if desc is not None:
        relator = desc.relator_letters() * desc.n
        pos = _rotations_of(list(relator))
        neg = _rotations_of(list(_involute_letters(fp, relator)))
        for name, v in pic.vertices.items():
            letters = tuple(v.corners)
            if any(z is None for z in letters):
                violations.append({"code": "EMPTY_CORNER", "where": name})
                continue
            if pic.kind == "picture":
                ok = letters in pos if v.sign > 0 else letters in neg
                if not ok:
                    violations.append({"code": "BAD_LABEL", "where": name})
            else:
                if clique_label_exponents(desc, letters) is None:
                    violations.append({"code": "BAD_LABEL", "where": name})

    # regions: single factor, arcs separate, triviality
    face_factor = {}
    spherical = not pic.boundary
    nontrivial_faces = []
    for idx in range(len(pic.faces())):
        letters = pic.face_letters(idx)
        factors = {z.factor for z in letters}
        if len(factors) > 1:
            violations.append({"code": "MIXED_FACTOR_REGION", "where": idx})
            continue
        factor = factors.pop() if factors else None
        face_factor[idx] = factor
        if factor is None:
            continue
        grp = fp.factor(factor)
        prod = grp.identity()
        for z in letters:
            prod = grp.multiply(prod, z.element)
        if not grp.is_identity(prod):
            if spherical:
                nontrivial_faces.append(idx)
            else:
                violations.append({"code": "NONTRIVIAL_REGION", "where": idx})
    if spherical and len(nontrivial_faces) > 1:
        for idx in nontrivial_faces:
            violations.append({"code": "NONTRIVIAL_REGION", "where": idx})

    for arc_id in pic.arcs:
        f1, f2 = pic.arc_sides(arc_id)
        if f1 == f2:
            violations.append({"code": "ARC_NOT_SEPARATING", "where": arc_id})
        elif (face_factor.get(f1) is not None and face_factor.get(f2) is not None
              and face_factor[f1] == face_factor[f2]):
            violations.append({"code": "ARC_FACTOR_CLASH", "where": arc_id})

    if not pic.connected():
        violations.append({"code": "DISCONNECTED", "where": "map"})

    return {"violations": violations, "euler": euler, "valid": not violations,
            "exterior": nontrivial_faces[0] if spherical and nontrivial_faces else None}


def clique_label_exponents(desc, letters):
    """Exponent lists when the letters spell a clique label (either
    orientation, any rotation); None otherwise."""
    letters = tuple(letters)
    if any(z is None for z in letters):
        return None
    for cand in (letters, _involute_letters(desc.fp, letters)):
        for j in range(len(cand)):
            rot = cand[j:] + cand[:j]
            parsed = gtg.parse_label(desc.fp, rot, desc.a, desc.b, tuple(desc.u))
            if parsed is not None:
                return parsed
    return None


# -- zones --------------------------------------------------------------------


@dataclass
class ZoneIncidence:
    site: object           # vertex name or BOUNDARY
    slots: tuple           # consecutive slot indices, rotation order
    anchor: int            # corner index just before the first slot
    subword: tuple         # corner letters between consecutive slots


@dataclass
class Zone:
    arcs: frozenset
    omega: int
    incidences: list

    def endpoints(self):
        return tuple(sorted({inc.site for inc in self.incidences}, key=str))

    def is_boundary_zone(self):
        return any(inc.site == BOUNDARY for inc in self.incidences)


def _parallel_classes(pic):
    parent = {a: a for a in pic.arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for idx, face in enumerate(pic.faces()):
        if len(face) != 2:
            continue
        arcs_crossed = set()
        for site, i in face:
            arcs_crossed.add(_arc_of_dart(pic, pic._site_rotation(site)[i]))
        if len(arcs_crossed) == 2:
            a, b = arcs_crossed
            parent[find(a)] = find(b)
    classes = {}
    for a in pic.arcs:
        classes.setdefault(find(a), []).append(a)
    return list(classes.values())


def _arc_of_dart(pic, dart):
    for aid, (d0, d1) in pic.arcs.items():
        if dart in (d0, d1):
            return aid
    raise PictureError("dart %r not in any arc" % (dart,))


def zones(pic, check_pieces=True):
    """Partition arcs into maximal parallel classes and read off the zone
    subwords; checks the piece identity s = t^-1 on two-ended zones."""
    if not pic._frozen:
        pic.freeze()
    arc_of = {}
    for aid, (d0, d1) in pic.arcs.items():
        arc_of[d0] = aid
        arc_of[d1] = aid
    out = []
    for cls in _parallel_classes(pic):
        cls_set = set(cls)
        incidences = []
        sites = {pic._place[d][0] for aid in cls for d in pic.arcs[aid]}
        for site in sorted(sites, key=str):
            rotation = pic._site_rotation(site)
            deg = len(rotation)
            slots = sorted(i for i, d in enumerate(rotation) if arc_of[d] in cls_set)
            runs = _cyclic_runs(slots, deg)
            for run in runs:
                sub = []
                for t in run[:-1]:
                    val = pic._corner_value(site, t)
                    sub.extend(val)
                incidences.append(ZoneIncidence(site, tuple(run),
                                                (run[0] - 1) % deg, tuple(sub)))
        zone = Zone(frozenset(cls), len(cls), incidences)
        if check_pieces:
            _check_zone_pieces(pic, zone)
        out.append(zone)
    return out


def _cyclic_runs(slots, deg):
    """Group sorted slot indices into maximal cyclically consecutive runs."""
    if not slots:
        return []
    if len(slots) == deg:
        return [list(range(deg))]
    slot_set = set(slots)
    runs = []
    for s in slots:
        if (s - 1) % deg not in slot_set:
            run = [s]
            while (run[-1] + 1) % deg in slot_set:
                run.append((run[-1] + 1) % deg)
            runs.append(run)
    return runs


def _check_zone_pieces(pic, zone):
    vertex_incs = [inc for inc in zone.incidences if inc.site != BOUNDARY]
    if len(vertex_incs) == 2 and zone.omega > 1:
        s, t = vertex_incs[0].subword, vertex_incs[1].subword
        if len(s) == len(t) and s:
            expected = _involute_letters(pic.fp, s)
            if tuple(t) != expected:
                raise PictureError("zone pieces differ: %s vs %s"
                                   % (list(map(str, s)), list(map(str, t))))


def vertex_zone_degree(pic, name, zone_list=None):
    """Number of zone incidences around a vertex."""
    if zone_list is None:
        zone_list = zones(pic, check_pieces=False)
    return sum(1 for z in zone_list for inc in z.incidences if inc.site == name)


# -- bridge moves and dipoles --------------------------------------------------


def _face_travels(pic, face_idx):
    """Directed arc-travels (dart_out, dart_in) between consecutive corners
    of a face."""
    face = pic.faces()[face_idx]
    travels = []
    for site, i in face:
        dart = pic._site_rotation(site)[i]
        travels.append((dart, pic._other[dart]))
    return travels


def bridge_move(pic, arc1, arc2, face=None):
    """Rewire two arcs bordering a common region; the boundary label and all
    corner letters stay put, only the arc pairing changes."""
    if not pic._frozen:
        pic.freeze()
    if arc1 == arc2:
        raise IllegalMove("bridge move needs two distinct arcs")
    shared = set(pic.arc_sides(arc1)) & set(pic.arc_sides(arc2))
    if face is not None:
        shared &= {face}
    if not shared:
        raise IllegalMove("arcs %s and %s do not border a common region"
                          % (arc1, arc2))
    face_idx = min(shared)
    travels = {}
    for dart_out, dart_in in _face_travels(pic, face_idx):
        aid = _arc_of_dart(pic, dart_out)
        if aid in (arc1, arc2) and aid not in travels:
            travels[aid] = (dart_out, dart_in)
    if set(travels) != {arc1, arc2}:
        raise IllegalMove("arcs do not both travel the region boundary")
    out1, in1 = travels[arc1]
    out2, in2 = travels[arc2]
    new = pic.copy()
    new.arcs[arc1] = (in1, out2)
    new.arcs[arc2] = (in2, out1)
    return new.freeze()


def cancelling_pair(pic, arc_id):
    """The two vertices joined by this arc when their labels, read from its
    endpoints, are mutually inverse; None otherwise."""
    d0, d1 = pic.arcs[arc_id]
    s0, _ = pic._place[d0]
    s1, _ = pic._place[d1]
    if BOUNDARY in (s0, s1) or s0 == s1:
        return None
    name0, label0 = pic.label_from_dart(d0)
    name1, label1 = pic.label_from_dart(d1)
    if None in label0 or None in label1:
        return None
    if label1 == _involute_letters(pic.fp, label0):
        return (name0, name1)
    return None


def find_dipole(pic, depth=3):
    """A cancelling vertex pair reachable by at most depth bridge moves, or
    None; bounded probe, not a full reducedness decision."""
    if not pic._frozen:
        pic.freeze()

    def key(p):
        rows = []
        for name in sorted(p.vertices):
            v = p.vertices[name]
            rows.append((name, tuple(map(str, v.rotation))))
        arcs = tuple(sorted((a, str(pair)) for a, pair in p.arcs.items()))
        return (tuple(rows), arcs)

    seen = {key(pic)}
    frontier = [pic]
    for _ in range(depth + 1):
        nxt = []
        for p in frontier:
            for arc_id in sorted(p.arcs):
                pair = cancelling_pair(p, arc_id)
                if pair is not None:
                    return pair
            for a1 in sorted(p.arcs):
                for a2 in sorted(p.arcs):
                    if a1 >= a2:
                        continue
                    if not set(p.arc_sides(a1)) & set(p.arc_sides(a2)):
                        continue
                    try:
                        moved = bridge_move(p, a1, a2)
                    except IllegalMove:
                        continue
                    k = key(moved)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(moved)
        frontier = nxt
        if not frontier:
            break
    return None


# -- cliques -------------------------------------------------------------------


def _label_offset_mod_l(desc, letters):
    """Rotation offset mod l identifying letters as a cyclic conjugate of the
    positive relator power or of its starting-with-a inverse form."""
    relator = desc.relator_letters() * desc.n
    star = _star_letters(desc)
    offsets = set()
    for base in (relator, star):
        n = len(base)
        if len(letters) != n:
            continue
        for j in range(n):
            if base[j:] + base[:j] == letters:
                offsets.add(j % desc.l)
    if not offsets:
        return None
    if len(offsets) > 1:
        raise NotReducedPicture("label offset is not unique mod l; "
                                "description admits a refinement")
    return offsets.pop()


def _star_letters(desc):
    """The relator-power inverse, rotated to start at an a-power slot."""
    inv = _involute_letters(desc.fp, desc.relator_letters() * desc.n)
    grp = desc.fp.factor(desc.a.factor)
    for j, z in enumerate(inv):
        if z.factor == desc.a.factor and gtg.is_power_of(grp, desc.a.element,
                                                         z.element):
            return inv[j:] + inv[:j]
    return inv


def clique_relation(pic, desc, assume_maximal=False):
    """Partition of the vertices under the reflexive-transitive closure of
    the joined-with-aligned-offset relation."""
    if not pic._frozen:
        pic.freeze()
    if not assume_maximal and gtg.detect_refinement(desc) is not None:
        raise gtg.NotMaximal("description admits a refinement; "
                             "refine before forming cliques")
    parent = {name: name for name in pic.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for arc_id, (d0, d1) in pic.arcs.items():
        s0, _ = pic._place[d0]
        s1, _ = pic._place[d1]
        if BOUNDARY in (s0, s1) or s0 == s1:
            continue
        _, label0 = pic.label_from_dart(d0)
        _, label1 = pic.label_from_dart(d1)
        k0 = _label_offset_mod_l(desc, tuple(label0))
        k1 = _label_offset_mod_l(desc, _involute_letters(pic.fp, tuple(label1)))
        if k0 is None or k1 is None:
            raise PictureError("arc %s joins vertices with non-relator labels"
                               % arc_id)
        if k0 == k1:
            parent[find(s0)] = find(s1)
    classes = {}
    for name in pic.vertices:
        classes.setdefault(find(name), []).append(name)
    return sorted(sorted(c) for c in classes.values())


def _class_simply_connected(pic, cls):
    """Euler count for the subpicture spanned by a vertex class: vertices,
    intra-class arcs, and wholly enclosed faces; a disc has V - E + F = 1."""
    cls_set = set(cls)
    intra = [aid for aid, (d0, d1) in pic.arcs.items()
             if pic._place[d0][0] in cls_set and pic._place[d1][0] in cls_set]
    enclosed = 0
    for idx, face in enumerate(pic.faces()):
        sites = {site for site, _ in face}
        if sites <= cls_set:
            arcs_used = {_arc_of_dart(pic, pic._site_rotation(site)[i])
                         for site, i in face}
            if arcs_used <= set(intra):
                enclosed += 1
    # connectivity within the class via intra arcs
    if cls:
        reach = {cls[0]}
        frontier = [cls[0]]
        adj = {}
        for aid in intra:
            d0, d1 = pic.arcs[aid]
            u, v = pic._place[d0][0], pic._place[d1][0]
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        while frontier:
            u = frontier.pop()
            for v in adj.get(u, ()):
                if v not in reach:
                    reach.add(v)
                    frontier.append(v)
        if reach != cls_set:
            return False, intra
    return (len(cls) - len(intra) + enclosed) == 1, intra


def _merge_corner(fp, left, right):
    """Product of two optional corner letters within one factor."""
    if left is None:
        return right
    if right is None:
        return left
    if left.factor != right.factor:
        raise PictureError("merging corners across factors")
    grp = fp.factor(left.factor)
    prod = grp.multiply(left.element, right.element)
    return None if grp.is_identity(prod) else fp.letter(left.factor, prod)


def _contract_arc(pic, aid):
    """Merge the two distinct endpoints of an arc into one vertex."""
    d_u, d_v = pic.arcs[aid]
    u, i = pic._place_mut[d_u]
    v, j = pic._place_mut[d_v]
    vu, vv = pic.vertices[u], pic.vertices[v]
    rot = (vu.rotation[i + 1:] + vu.rotation[:i]
           + vv.rotation[j + 1:] + vv.rotation[:j])
    corners = (vu.corners[i + 1:] + vu.corners[:i]
               + vv.corners[j + 1:] + vv.corners[:j])
    # the corner sequence above keeps "after dart" alignment except at the
    # two splice points, whose gaps merge pairwise
    nu, nv = vu.degree(), vv.degree()
    if nu < 2 or nv < 2:
        raise PictureError("contracting a degree-1 vertex")
    mid = nu - 1  # last dart coming from u in rot is u.rotation[i-1]
    corners[mid - 1] = _merge_corner(pic.fp, vu.corners[(i - 1) % nu],
                                     vv.corners[j])
    corners[-1] = _merge_corner(pic.fp, vv.corners[(j - 1) % nv],
                                vu.corners[i])
    merged = Vertex(vu.sign, rot, corners)
    pic.vertices[u] = merged
    del pic.vertices[v]
    del pic.arcs[aid]
    pic.members[u] = pic.members.get(u, [(u, vu.sign)]) + pic.members.pop(
        v, [(v, vv.sign)])
    for t, dart in enumerate(rot):
        pic._place_mut[dart] = (u, t)
    return u


def _remove_adjacent_loop(pic, aid):
    """Delete a loop whose two darts are cyclically adjacent with an empty
    gap between them."""
    d0, d1 = pic.arcs[aid]
    name, i = pic._place_mut[d0]
    _, j = pic._place_mut[d1]
    v = pic.vertices[name]
    deg = v.degree()
    if (i + 1) % deg == j:
        first, second = i, j
    elif (j + 1) % deg == i:
        first, second = j, i
    else:
        return False
    if v.corners[first] is not None:
        return False
    merged = _merge_corner(pic.fp, v.corners[(first - 1) % deg],
                           v.corners[second])
    keep = [t for t in range(deg) if t not in (first, second)]
    rot = [v.rotation[t] for t in keep]
    corners = [v.corners[t] for t in keep]
    pos = keep.index((first - 1) % deg) if (first - 1) % deg in keep else None
    if pos is None:
        raise PictureError("loop removal emptied the vertex")
    corners[pos] = merged
    pic.vertices[name] = Vertex(v.sign, rot, corners)
    del pic.arcs[aid]
    for t, dart in enumerate(rot):
        pic._place_mut[dart] = (name, t)
    return True


def clique_quotient(pic, desc, assume_maximal=False):
    """Contract every vertex class of the joined-offset relation to a single
    clique; classes must be simply connected and their internal parallel
    classes already multiples of l/2."""
    if not pic._frozen:
        pic.freeze()
    classes = clique_relation(pic, desc, assume_maximal=assume_maximal)
    half = desc.l // 2
    for z in zones(pic, check_pieces=False):
        sites = {pic._place[d][0] for aid in z.arcs for d in pic.arcs[aid]}
        if BOUNDARY in sites:
            continue
        for cls in classes:
            if sites <= set(cls) and z.omega % half:
                raise PictureError(
                    "intra-clique parallel class of size %d is not a multiple"
                    " of l/2 = %d; bridge-normalize first" % (z.omega, half))
    for cls in classes:
        ok, _ = _class_simply_connected(pic, cls)
        if not ok:
            raise NotSimplyConnected("class %s is not simply connected" % (cls,))

    out = pic.copy()
    out.kind = "clique"
    out.members = {name: [(name, v.sign)] for name, v in out.vertices.items()}
    out._place_mut = {}
    for name, v in out.vertices.items():
        for t, dart in enumerate(v.rotation):
            out._place_mut[dart] = (name, t)

    for cls in classes:
        alive = set(cls)
        while True:
            def site(dart):
                return out._place_mut.get(dart, (BOUNDARY,))[0]

            intra = [aid for aid, (d0, d1) in out.arcs.items()
                     if site(d0) in alive and site(d1) in alive]
            joining = [aid for aid in intra
                       if site(out.arcs[aid][0]) != site(out.arcs[aid][1])]
            if joining:
                survivor = _contract_arc(out, sorted(joining)[0])
                alive = {n for n in alive if n in out.vertices}
                continue
            loops = [aid for aid in intra]
            progress = False
            for aid in sorted(loops):
                if _remove_adjacent_loop(out, aid):
                    progress = True
                    break
            if not progress:
                if loops:
                    raise PictureError("stuck contracting loops %s" % loops)
                break
    del out._place_mut
    out._frozen = False
    return out.freeze()


def expand_cliques(cp):
    """Multiset of original (vertex, sign) pairs across all cliques."""
    out = []
    for name in cp.vertices:
        out.extend(cp.members.get(name, [(name, cp.vertices[name].sign)]))
    return sorted(out)


# -- builders -------------------------------------------------------------------


def complete_boundary(pic, start_dart=None):
    """Attach every unplaced arc end to the disc boundary in the planar
    order obtained by walking around the vertex cluster.

    Arcs to the boundary are declared with one dart placed in a vertex
    rotation and the other dart left unplaced; this computes the boundary
    dart order (anticlockwise) for them.
    """
    placed = set()
    vertex_of = {}
    for name, v in pic.vertices.items():
        for i, dart in enumerate(v.rotation):
            placed.add(dart)
            vertex_of[dart] = (name, i)
    partner = {}
    free = []
    for aid, (d0, d1) in pic.arcs.items():
        unplaced = [d for d in (d0, d1) if d not in placed]
        if len(unplaced) == 2:
            raise PictureError("arc %s has no vertex end to walk from" % aid)
        if unplaced:
            inside = d0 if d1 == unplaced[0] else d1
            partner[inside] = unplaced[0]
            free.append(inside)
    if not free:
        pic.set_boundary([], [])
        return pic

    other = {}
    for d0, d1 in pic.arcs.values():
        other[d0] = d1
        other[d1] = d0

    def succ(dart):
        name, i = vertex_of[dart]
        while True:
            rot = pic.vertices[name].rotation
            j = (i + 1) % len(rot)
            e = rot[j]
            if e in partner:
                return e
            name, i = vertex_of[other[e]]

    start = start_dart if start_dart is not None else sorted(free, key=str)[0]
    walk = [start]
    cur = succ(start)
    while cur != start:
        walk.append(cur)
        cur = succ(cur)
    if len(walk) != len(free):
        raise PictureError("boundary walk missed some free ends")
    boundary = [partner[walk[0]]] + [partner[d] for d in reversed(walk[1:])]
    pic.set_boundary(boundary, [()] * len(boundary))
    return pic


def fill_gaps_trivially(pic):
    """Choose boundary gap words making every boundary-touching region
    trivial in its factor; needs abelian factor groups.

    The whole inverse of a region's vertex-corner product goes into the
    region's first gap in trace order.
    """
    if not pic._frozen:
        pic.freeze()
    gaps = [() for _ in pic.boundary]
    for idx in range(len(pic.faces())):
        sites = pic.faces()[idx]
        gap_slots = [i for site, i in sites if site == BOUNDARY]
        if not gap_slots:
            continue
        letters = [pic.vertices[site].corners[i] for site, i in sites
                   if site != BOUNDARY]
        if any(z is None for z in letters):
            raise PictureError("empty corner on a boundary region")
        factors = {z.factor for z in letters}
        if len(factors) > 1:
            raise PictureError("mixed factors on boundary region %d" % idx)
        if not letters:
            continue
        factor = factors.pop()
        grp = pic.fp.factor(factor)
        prod = grp.identity()
        for z in letters:
            prod = grp.multiply(prod, z.element)
        if not grp.is_identity(prod):
            first = next(i for site, i in sites if site == BOUNDARY)
            gaps[first] = (pic.fp.letter(factor, grp.invert(prod)),)
    new = pic.copy()
    new.gaps = gaps
    return new.freeze()


def radial_picture(desc, sign=1, name="v0"):
    """Single vertex with every arc running to the boundary; the boundary
    label is the inverse of the vertex label."""
    fp = desc.fp
    label = desc.relator_letters() * desc.n
    if sign < 0:
        label = _involute_letters(fp, label)
    n = len(label)
    pic = Picture(fp, DISC)
    rotation = [("r%d" % i, 0) for i in range(n)]
    pic.add_vertex(name, sign, rotation, list(label))
    for i in range(n):
        pic.add_arc("r%d" % i, ("r%d" % i, 0), ("r%d" % i, 1))
    complete_boundary(pic)
    return fill_gaps_trivially(pic)


# -- audits --------------------------------------------------------------------


def _exterior_vertices(pic):
    if pic.surface == SPHERE and not pic.boundary:
        return set()
    out = set()
    for name, v in pic.vertices.items():
        for i in range(v.degree()):
            if pic.face_touches_boundary(pic.face_of((name, i))):
                out.add(name)
                break
    return out


def c6_audit(cp):
    """Interior cliques meeting fewer than six zones; empty report = C(6)."""
    if not cp._frozen:
        cp.freeze()
    zone_list = zones(cp, check_pieces=False)
    exterior = _exterior_vertices(cp)
    offenders = []
    for name in sorted(cp.vertices):
        if name in exterior:
            continue
        deg = vertex_zone_degree(cp, name, zone_list)
        if deg < 6:
            offenders.append({"clique": name, "degree": deg})
    return {"interior_below_six": offenders, "holds": not offenders}


HYPOTHESIS_A = "A"
HYPOTHESIS_B = "B"


class HypothesisFailure(PictureError):
    code = "HYPOTHESIS_FAIL"


def check_hypothesis_clauses(desc, which):
    """Clause-by-clause check of the two standing hypotheses."""
    from .freeprod import UndecidedError
    clauses = {}
    clauses["n_at_least_2"] = desc.n >= 2
    if which == HYPOTHESIS_A:
        clauses["length_at_least_4"] = desc.free_product_length_in_generators() >= 4
        try:
            clauses["admissible"] = gtg.admissible(desc.fp, desc.a, desc.b)
        except UndecidedError:
            clauses["admissible"] = "UNDECIDED"
    else:
        clauses["no_order_two_letter"] = all(
            desc.fp.letter_order(z) != 2 for z in desc.relator_letters())
    ok = all(v is True for v in clauses.values())
    return ok, clauses


def zone_bound_audit(cp, desc, hypothesis):
    """Flag clique-to-clique zones at or above the hypothesis threshold
    (l for A, l/2 for B); a falsification probe for minimal pictures."""
    ok, clauses = check_hypothesis_clauses(desc, hypothesis)
    if not ok:
        raise HypothesisFailure("hypothesis %s clauses failed: %s"
                                % (hypothesis, clauses))
    bound = desc.l if hypothesis == HYPOTHESIS_A else desc.l // 2
    flagged = []
    for z in zones(cp, check_pieces=False):
        if z.is_boundary_zone():
            continue
        if z.omega >= bound:
            flagged.append({"arcs": sorted(z.arcs), "omega": z.omega,
                            "bound": bound})
    return {"flagged": flagged, "bound": bound, "holds": not flagged}


def curvature_audit(cp):
    """Boundary length against the total excess degree sum(deg - 6)."""
    if not cp._frozen:
        cp.freeze()
    if cp.surface != DISC:
        raise PictureError("curvature audit runs on disc pictures")
    zone_list = zones(cp, check_pieces=False)
    lhs = len(cp.boundary_label_letters())
    rhs = sum(vertex_zone_degree(cp, name, zone_list) - 6
              for name in cp.vertices)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs >= rhs}
