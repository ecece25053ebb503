#!/usr/bin/env python3
"""Generates the bundled city8 map and its route sets.

Layout: two east-west avenues crossed by four north-south streets (8
intersections) on a 400 m x 400 m raster, 4 m cells. Roads are 20 m wide with
chamfered curbs at every intersection corner, framed by 4 m sidewalks;
everything else is building. Route endpoints sit on road centerlines.

Usage: make_city8.py [output_dir]
"""

import itertools
import json
import random
import sys
from pathlib import Path

CELL = 4.0
W = H = 100
ROAD_HALF = 10.0
CHAMFER = 8.0
AVENUES_Y = [110.0, 290.0]
STREETS_X = [50.0, 150.0, 250.0, 350.0]
ROAD_MIN, ROAD_MAX = 10.0, 390.0


def center(i):
    return i * CELL + CELL / 2


def on_road(x, y):
    for ay in AVENUES_Y:
        if abs(y - ay) < ROAD_HALF and ROAD_MIN <= x <= ROAD_MAX:
            return True
    for sx in STREETS_X:
        if abs(x - sx) < ROAD_HALF and ROAD_MIN <= y <= ROAD_MAX:
            return True
    # Chamfered curb corners: a triangle in each quadrant of an intersection.
    for ay in AVENUES_Y:
        for sx in STREETS_X:
            dx, dy = abs(x - sx) - ROAD_HALF, abs(y - ay) - ROAD_HALF
            if dx >= 0 and dy >= 0 and dx + dy < CHAMFER:
                return True
    return False


def build_classes():
    road = [[on_road(center(c), center(r)) for c in range(W)] for r in range(H)]
    classes = []
    for r in range(H):
        for c in range(W):
            if road[r][c]:
                classes.append("Road")
                continue
            near = any(
                0 <= r + dr < H and 0 <= c + dc < W and road[r + dr][c + dc]
                for dr in (-1, 0, 1)
                for dc in (-1, 0, 1)
            )
            classes.append("Sidewalk" if near else "Building")
    return classes


def rle(classes):
    out = []
    for name, group in itertools.groupby(classes):
        out.append([name, len(list(group))])
    return out


def snap(v):
    return (int(v // CELL)) * CELL + CELL / 2


def named_points():
    pts = {}
    idx = 0

    def add(x, y):
        nonlocal idx
        label = chr(ord("A") + idx)
        idx += 1
        pts[label] = [snap(x), snap(y)]

    for ay in AVENUES_Y:
        xs = [ROAD_MIN + 16.0] + [(a + b) / 2 for a, b in zip(STREETS_X, STREETS_X[1:])] + [ROAD_MAX - 16.0]
        for x in xs:
            add(x, ay)
    for sx in STREETS_X:
        for y in [ROAD_MIN + 48.0, (AVENUES_Y[0] + AVENUES_Y[1]) / 2, ROAD_MAX - 48.0]:
            add(sx, y)
    return pts


def road_graph():
    nodes, edges = [], []
    for j, ay in enumerate(AVENUES_Y):
        for i, sx in enumerate(STREETS_X):
            nodes.append({"id": f"I{j}{i}", "position": [snap(sx), snap(ay)], "kind": "intersection"})
    for j, ay in enumerate(AVENUES_Y):
        nodes.append({"id": f"W{j}", "position": [snap(ROAD_MIN + 2), snap(ay)], "kind": "dead_end"})
        nodes.append({"id": f"E{j}", "position": [snap(ROAD_MAX - 2), snap(ay)], "kind": "dead_end"})
        chain = [f"W{j}"] + [f"I{j}{i}" for i in range(4)] + [f"E{j}"]
        edges += [[a, b] for a, b in zip(chain, chain[1:])]
    for i, sx in enumerate(STREETS_X):
        nodes.append({"id": f"S{i}", "position": [snap(sx), snap(ROAD_MIN + 2)], "kind": "dead_end"})
        nodes.append({"id": f"N{i}", "position": [snap(sx), snap(ROAD_MAX - 2)], "kind": "dead_end"})
        chain = [f"S{i}", f"I0{i}", f"I1{i}", f"N{i}"]
        edges += [[a, b] for a, b in zip(chain, chain[1:])]
    return {"nodes": nodes, "edges": edges}


def pedestrians():
    peds = []
    # Crosswalks just outside each intersection, walked back and forth.
    for j, ay in enumerate(AVENUES_Y):
        for i, sx in enumerate(STREETS_X):
            x = sx + (ROAD_HALF + 4.0) * (1 if (i + j) % 2 == 0 else -1)
            peds.append({"path": [[x, ay - ROAD_HALF - 2.0], [x, ay + ROAD_HALF + 2.0]],
                         "closed": False, "speed": 1.0 + 0.1 * i, "radius": 0.3, "phase": 3.0 * j})
    # Mid-block crossings on the avenues.
    for j, ay in enumerate(AVENUES_Y):
        for x in (100.0, 300.0):
            peds.append({"path": [[x, ay - ROAD_HALF - 2.0], [x, ay + ROAD_HALF + 2.0]],
                         "closed": False, "speed": 1.3, "radius": 0.3, "phase": 7.0})
    # Sidewalk loops around the two central blocks.
    for x0, x1 in ((62.0, 138.0), (262.0, 338.0)):
        y0, y1 = 122.0, 278.0
        peds.append({"path": [[x0, y0], [x1, y0], [x1, y1], [x0, y1]], "closed": True,
                     "speed": 1.2, "radius": 0.3, "phase": 0.0})
    return peds


def route_sets(points):
    labels = sorted(points)
    pairs = [(a, b) for a in labels for b in labels if a != b]
    rng = random.Random(8)
    rng.shuffle(pairs)
    train = pairs[:89]
    unseen = pairs[89:93]
    seen = train[:20]
    return {
        "seen": seen,
        "unseen": unseen,
        "train89": train,
    }


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "maps"
    out.mkdir(parents=True, exist_ok=True)
    pts = named_points()
    doc = {
        "schema": "vgmap/1",
        "name": "city8",
        "cell_size": CELL,
        "width": W,
        "height": H,
        "origin": [0.0, 0.0],
        "building_height": 12.0,
        "classes": {"rle": rle(build_classes())},
        "road_graph": road_graph(),
        "named_points": pts,
        "pedestrians": pedestrians(),
    }
    (out / "city8.json").write_text(json.dumps(doc, indent=1) + "\n")
    for name, routes in route_sets(pts).items():
        scen = {
            "schema": "vgscen/1",
            "name": name,
            "map": "city8",
            "episodes_per_route": 1,
            "pedestrians": True,
            "routes": [[a, b] for a, b in routes],
        }
        (out / f"city8_{name}.json").write_text(json.dumps(scen, indent=1) + "\n")


if __name__ == "__main__":
    main()
