"""Counts 4-regular graphs on 9 labelled vertices with N(0) = {1,2,3,4},
and their isomorphism classes, by plain edge-set backtracking."""
import itertools
import networkx as nx

N = 9
pairs = [(u, v) for u, v in itertools.combinations(range(1, N), 2)]
deg0 = [1 if v in (1, 2, 3, 4) else 0 for v in range(N)]
deg0[0] = 4


def extend(i, deg, chosen, out):
    if i == len(pairs):
        if all(d == 4 for d in deg):
            out.append(list(chosen))
        return
    u, v = pairs[i]
    # prune: u must still be completable using pairs after i
    if deg[u] < 4 and deg[v] < 4:
        deg[u] += 1; deg[v] += 1; chosen.append((u, v))
        extend(i + 1, deg, chosen, out)
        chosen.pop(); deg[u] -= 1; deg[v] -= 1
    extend(i + 1, deg, chosen, out)


graphs = []
extend(0, deg0[:], [], graphs)
print("rooted labelled", len(graphs), "x70 =", len(graphs) * 70)
classes = {}
for es in graphs:
    g = nx.Graph(es + [(0, k) for k in (1, 2, 3, 4)])
    h = nx.weisfeiler_lehman_graph_hash(g)
    bucket = classes.setdefault(h, [])
    if not any(nx.is_isomorphic(g, o) for o in bucket):
        bucket.append(g)
reps = [g for b in classes.values() for g in b]
print("classes", len(reps), "connected", sum(nx.is_connected(g) for g in reps))
