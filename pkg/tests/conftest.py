import pytest

_results = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_results] = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion for the summary.

    Usage: ``criterion(n, "label")`` marks the start; the test outcome
    decides PASS/FAIL, and ``criterion.note(text)`` attaches detail.
    """
    store = request.config.stash[_results]

    class Recorder:
        key = None

        def __call__(self, number, label):
            self.key = number
            store[number] = {"label": label, "ok": None, "notes": []}

        def note(self, text):
            store[self.key]["notes"].append(text)

    rec = Recorder()
    yield rec
    if rec.key is not None:
        rep = getattr(request.node, "rep_call", None)
        store[rec.key]["ok"] = bool(rep and rep.passed)


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash[_results]
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        r = store[number]
        verdict = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {r['label']}")
        for n in r["notes"]:
            terminalreporter.write_line(f"              {n}")
