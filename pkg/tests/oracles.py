"""Independent reference implementations used only by tests."""

from metaising import hamiltonian


def phi_bruteforce(G, params, start, end):
    """Minimax over all simple single-flip paths, by branch-and-bound DFS.

    Independent of the union-find sweep; exact because pruning only cuts
    branches whose running max already matches or exceeds the best path.
    """
    n = G.n
    best = [None]

    def dfs(state, running_max, visited):
        if best[0] is not None and running_max >= best[0]:
            return
        if state == end:
            best[0] = running_max
            return
        for j in range(n):
            nxt = state ^ (1 << j)
            if nxt in visited:
                continue
            energy = hamiltonian(G, nxt, params)
            visited.add(nxt)
            dfs(nxt, max(running_max, energy), visited)
            visited.remove(nxt)

    dfs(start, hamiltonian(G, start, params), {start})
    return best[0]
