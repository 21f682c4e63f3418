import itertools

from hypothesis import strategies as st

from parfpt.graph import Graph


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n_edges):
    return Graph.from_edges(n_edges + 1, [(i, i + 1) for i in range(n_edges)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_edges(t):
    return Graph.from_edges(2 * t, [(2 * i, 2 * i + 1) for i in range(t)])


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def acceptance_line(number, ok, detail):
    status = "INFO" if ok is None else ("PASS" if ok else "FAIL")
    line = f"criterion {number:>2} {status}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
