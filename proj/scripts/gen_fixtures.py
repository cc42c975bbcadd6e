#!/usr/bin/env python3
"""Regenerates the committed files under data/fixtures/ deterministically."""

import json
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "fixtures")

EARTH_R = 6_371_000.0


def haversine(a, b):
    lon1, lat1 = map(math.radians, a)
    lon2, lat2 = map(math.radians, b)
    s = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(
        (lon2 - lon1) / 2
    ) ** 2
    return 2 * EARTH_R * math.asin(math.sqrt(s))


def write(name, text):
    path = os.path.join(OUT, name)
    with open(path, "w", newline="\n") as f:
        f.write(text)
    print("wrote", path)


# ---------------------------------------------------------------- net26 -----
# Ring of 16 junctions, an inner square, and six spur nodes. WGS84 degrees.
def net26_nodes():
    nodes = {}
    for i in range(16):
        ang = 2 * math.pi * i / 16
        nodes[str(i + 1)] = (
            round(4.90 + 0.12 * math.cos(ang), 6),
            round(52.35 + 0.075 * math.sin(ang), 6),
        )
    nodes["17"] = (4.90, 52.40)
    nodes["18"] = (4.96, 52.35)
    nodes["19"] = (4.90, 52.30)
    nodes["20"] = (4.84, 52.35)
    nodes["21"] = (5.07, 52.38)
    nodes["22"] = (5.12, 52.41)
    nodes["23"] = (4.93, 52.46)
    nodes["24"] = (4.99, 52.49)
    nodes["25"] = (4.73, 52.32)
    nodes["26"] = (4.83, 52.26)
    return nodes


def net26_arcs():
    arcs = [(f"r{i+1:02d}", str(i + 1), str(i % 16 + 1 + 1)) for i in range(15)]
    arcs.append(("r16", "16", "1"))
    arcs += [
        ("c01", "17", "18"),
        ("c02", "18", "19"),
        ("c03", "19", "20"),
        ("c04", "20", "17"),
        ("d01", "5", "17"),
        ("d02", "1", "18"),
        ("d03", "13", "19"),
        ("d04", "9", "20"),
        ("s01", "1", "21"),
        ("s02", "21", "22"),
        ("s03", "5", "23"),
        ("s04", "23", "24"),
        ("s05", "9", "25"),
        ("s06", "13", "26"),
    ]
    return arcs


def gen_net26():
    nodes = net26_nodes()
    lines = ["coordinate_mode,wgs84", "[nodes]", "node_id,lon,lat"]
    for nid, (lon, lat) in nodes.items():
        lines.append(f"{nid},{lon},{lat}")
    lines += ["[arcs]", "arc_id,from_node,to_node,length_m"]
    for aid, u, v in net26_arcs():
        d = haversine(nodes[u], nodes[v])
        lines.append(f"{aid},{u},{v},{d:.1f}")
    write("net26.csv", "\n".join(lines) + "\n")
    return nodes


def gen_small_nets():
    write(
        "net_triangle.csv",
        "coordinate_mode,wgs84\n"
        "[nodes]\nnode_id,lon,lat\na,4.0,52.0\nb,4.1,52.0\nc,4.05,52.08\n"
        "[arcs]\narc_id,from_node,to_node,length_m\n"
        "e1,a,b,6849.0\ne2,b,c,7221.0\ne3,c,a,9284.0\n",
    )
    write(
        "net_disconnected.csv",
        "coordinate_mode,wgs84\n"
        "[nodes]\nnode_id,lon,lat\na,4.0,52.0\nb,4.1,52.0\nc,6.0,53.0\nd,6.1,53.0\n"
        "[arcs]\narc_id,from_node,to_node,length_m\n"
        "e1,a,b,6849.0\ne2,c,d,6700.0\n",
    )


# --------------------------------------------------------------- flows26 ----
def gen_flows26(nodes):
    # Demand points sit on arc starts near ring nodes; a week of records over
    # two daily periods, truck and total traffic mixed.
    spots = []
    for i in (1, 3, 5, 7, 9, 11, 13, 15, 17, 18, 19, 20):
        lon, lat = nodes[str(i)]
        spots.append((round(lon + 0.004, 6), round(lat + 0.002, 6), 18 + 4 * (i % 7)))
    lines = ["date,period,route_id,lon,lat,flow,speed,vehicle_class"]
    for day in range(1, 8):
        date = f"2030-06-{day:02d}"
        for pi, period in enumerate(("07:00-08:00", "16:00-17:00")):
            for si, (lon, lat, base) in enumerate(spots):
                truck = base + ((day + si + pi) % 5) - 2  # varies, mean = base
                total = truck * 6 + 40
                speed = 78 + ((si + day) % 4) * 3
                lines.append(
                    f"{date},{period},A{si+1:02d},{lon},{lat},{truck},{speed},truck"
                )
                lines.append(
                    f"{date},{period},A{si+1:02d},{lon},{lat},{total},{speed + 4},all"
                )
    write("flows26.csv", "\n".join(lines) + "\n")


# ---------------------------------------------------------------- pois26 ----
def gen_pois26(nodes):
    def near(nid, dlon, dlat):
        lon, lat = nodes[nid]
        return round(lon + dlon, 6), round(lat + dlat, 6)

    rows = ["id,label,lon,lat"]
    pois = [
        ("fs01", "fuel_station", near("1", 0.002, 0.001)),
        ("fs02", "fuel_station", near("5", -0.002, 0.001)),
        ("fs03", "fuel_station", near("9", 0.002, -0.001)),
        ("fs04", "Fuel Station", near("13", 0.001, 0.002)),
        ("fs05", "fuel_station", near("17", 0.002, 0.001)),
        ("fs06", "fuel_station", near("19", -0.002, -0.001)),
        ("ts01", "truck_stop", near("3", 0.002, 0.001)),
        ("ts02", "truck stop", near("11", -0.001, 0.002)),
        ("pa01", "parking_area", near("7", 0.001, 0.001)),
        ("sm01", "supermarket", near("2", 0.002, -0.001)),
        ("sm02", "supermarket", near("6", -0.001, 0.001)),
        ("sm03", "supermarket", near("15", 0.001, 0.001)),
        ("sm04", "supermarket", near("18", 0.002, 0.001)),
        ("mu01", "museum", near("4", 0.001, 0.001)),
        ("zz01", "warehouse", near("12", 0.001, -0.001)),
        # Far off the network: must be dropped by the buffer filter.
        ("fs99", "fuel_station", (5.40, 52.80)),
    ]
    for pid, label, (lon, lat) in pois:
        rows.append(f"{pid},{label},{lon},{lat}")
    write("pois26.csv", "\n".join(rows) + "\n")


def gen_provider_layout():
    write(
        "provider26.csv",
        "site_id,lon,lat\npv01,4.9840,52.4195\npv02,4.8165,52.2905\n",
    )
    write("layout26.csv", "site_id,level\nfs01,1\nfs03,2\nsm01,1\n")


# ---------------------------------------------------------------- plan30 ----
def gen_plan30():
    stations = []
    grid = []
    for yi, count in ((0, 5), (1, 5), (2, 5), (3, 3)):
        for xi in range(count):
            grid.append((xi * 5000.0, yi * 5000.0))
    q_station = [65, 60, 55, 50, 46, 42, 38, 34, 30, 27, 24, 21, 18, 15, 12, 10, 8, 6, 5, 4]
    coords = grid + [(-1700.0, -1700.0), (21700.0, -1700.0)]
    initial = {"st03": 1, "st07": 1, "st12": 1}
    for i, (x, y) in enumerate(coords):
        sid = f"st{i+1:02d}"
        stations.append(
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [x, y]},
                "properties": {
                    "site_id": sid,
                    "kind": "station",
                    "q": q_station[i],
                    "initial_level": initial.get(sid, 0),
                },
            }
        )
    togo = []
    q_togo = [30, 26, 22, 18, 16, 14, 12, 10, 8, 6]
    for j in range(10):
        sid = f"t{j+1:02d}"
        togo.append(
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [500.0 + 2000.0 * j, 2500.0]},
                "properties": {
                    "site_id": sid,
                    "kind": "togo",
                    "q": q_togo[j],
                    "initial_level": 2 if sid == "t01" else 0,
                },
            }
        )
    doc = {
        "type": "FeatureCollection",
        "coordinate_mode": "planar",
        "features": stations + togo,
    }
    write("plan30.geojson", json.dumps(doc, indent=1) + "\n")


def gen_config30():
    cfg = {
        "inputs": {"instance": "plan30.geojson"},
        "instance": {
            "max_scale": 5,
            "max_piles": 5,
            "cap_scale": [0, 30, 35, 40, 45, 50],
            "cap_pile": 2.0,
            "pile_cost_eur": 2000.0,
            "penetration": [0.2, 0.4, 0.6, 0.8, 1.0],
            "budget_meur": [1.5, 1.5, 1.5, 1.5, 1.5],
            "max_new_stations": 5,
            "max_new_togo": 15,
            "min_station_spacing_km": 3.0,
        },
        "algorithm": {"pop_size": 500, "generations": 300, "pc": 0.9, "pm": 0.1, "seed": 1},
        "policy": "scenario1",
        "output_dir": "out",
    }
    write("config30.json", json.dumps(cfg, indent=1) + "\n")


def main():
    os.makedirs(OUT, exist_ok=True)
    nodes = gen_net26()
    gen_small_nets()
    gen_flows26(nodes)
    gen_pois26(nodes)
    gen_provider_layout()
    gen_plan30()
    gen_config30()


if __name__ == "__main__":
    main()
