#!/usr/bin/env python3
"""Writes the server-client plant and two controllers for n clients.

Tuples list participant states in process declaration order (server first).
"""
import itertools
import json
import sys

n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
out = sys.argv[2] if len(sys.argv) > 2 else "data"

clients = [f"c{i}" for i in range(1, n + 1)]
procs = ["p"] + clients
letters = [
    {"id": "t1", "domain": procs, "controllable": False},
    {"id": "t2", "domain": procs, "controllable": False},
]
for i, c in enumerate(clients, 1):
    letters += [
        {"id": f"p1_{i}", "domain": [c], "controllable": True},
        {"id": f"p2_{i}", "domain": [c], "controllable": True},
        {"id": f"e{i}", "domain": [c, "p"], "controllable": False},
    ]
letters.append({"id": "r", "domain": procs, "controllable": False})
tree = {"root": "p", "edges": [["p", c] for c in clients]}

server = ["init", "task", "one", "two"]
client = ["init", "c1", "c2", "prog", "end"]


def plant_transitions(local_state, enabled=lambda i, s, a: True):
    """local_state(i, s) -> controller state name for client i."""
    tr = {}
    for t, cs in (("t1", "c1"), ("t2", "c2")):
        tr[t] = [[["init"] + ["init"] * n, ["task"] + [cs] * n]]
    for i in range(1, n + 1):
        tr[f"p1_{i}"] = [x for x in ([["c1"], ["prog"]], [["c2"], ["c2"]]) if enabled(i, x[0][0], "p1")]
        tr[f"p2_{i}"] = [x for x in ([["c2"], ["prog"]], [["c1"], ["c1"]]) if enabled(i, x[0][0], "p2")]
        tr[f"e{i}"] = [[["task", "prog"], ["one", "end"]], [["one", "prog"], ["two", "end"]]]
    resettable = ["c1", "c2", "prog", "end"]
    tr["r"] = [[["two"] + list(combo), ["init"] + ["init"] * n]
               for combo in itertools.product(resettable, repeat=n)]
    return tr


acceptance = {"perProcess": {"p": {"final": [], "priority": {s: (2 if s == "init" else 1) for s in server}}}}
for c in clients:
    acceptance["perProcess"][c] = {"final": [], "priority": {s: (2 if s == "end" else 1) for s in client}}

plant = {
    "processes": procs,
    "letters": letters,
    "tree": tree,
    "states": {"p": server, **{c: client for c in clients}},
    "initial": {q: "init" for q in procs},
    "transitions": plant_transitions(None),
    "acceptance": acceptance,
}


def naive():
    # only the progress action matching the requested task
    doc = dict(plant)
    del doc["acceptance"]
    doc["transitions"] = plant_transitions(None, lambda i, s, a: (s, a) in (("c1", "p1"), ("c2", "p2")))
    doc["projection"] = {q: {s: s for s in doc["states"][q]} for q in procs}
    return doc


def round_robin():
    # client state (plant state, finished tasks mod n); c_k and c_{k+1} work when the count is k-1
    def name(s, m):
        return f"{s}/{m}"

    def active(i, m):
        return (i - 1) % n == m or (i - 1) % n == (m + 1) % n

    states = {"p": server}
    proj = {"p": {s: s for s in server}}
    for c in clients:
        states[c] = [name(s, m) for m in range(n) for s in client]
        proj[c] = {name(s, m): s for m in range(n) for s in client}
    tr = {}
    for t, cs in (("t1", "c1"), ("t2", "c2")):
        tr[t] = [[["init"] + [name("init", m)] * n, ["task"] + [name(cs, m)] * n] for m in range(n)]
    for i in range(1, n + 1):
        tr[f"p1_{i}"] = [[[name("c1", m)], [name("prog", m)]] for m in range(n) if active(i, m)]
        tr[f"p2_{i}"] = [[[name("c2", m)], [name("prog", m)]] for m in range(n) if active(i, m)]
        tr[f"e{i}"] = [x for m in range(n) for x in (
            [["task", name("prog", m)], ["one", name("end", m)]],
            [["one", name("prog", m)], ["two", name("end", m)]])]
    resettable = ["c1", "c2", "prog", "end"]
    tr["r"] = [[["two"] + [name(s, m) for s in combo], ["init"] + [name("init", (m + 1) % n)] * n]
               for m in range(n) for combo in itertools.product(resettable, repeat=n)]
    return {
        "processes": procs,
        "letters": letters,
        "tree": tree,
        "states": states,
        "initial": {"p": "init", **{c: name("init", 0) for c in clients}},
        "transitions": tr,
        "projection": proj,
    }


for fname, doc in (("server_client.json", plant), ("server_client_naive.json", naive()),
                   ("server_client_round_robin.json", round_robin())):
    with open(f"{out}/{fname}", "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
