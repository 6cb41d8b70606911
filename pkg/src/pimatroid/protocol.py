"""Line protocol for deciders running as separate processes.

The harness writes one JSON line of instance metadata (``n``, ``k``,
``alpha``, ``cost``, ``target``, ``seed``). The decider then sends queries such
as ``Q 2 3`` (``Q`` alone asks about the empty set), each answered with ``1``
or ``0``, and finishes with ``V yes`` or ``V no``. Anything else is a protocol
error.
"""

import json
import subprocess
import sys

from .errors import ProtocolError


def parse_request(line, n):
    parts = line.split()
    if not parts:
        raise ProtocolError("empty line from decider")
    if parts[0] == "V":
        if len(parts) != 2 or parts[1] not in ("yes", "no"):
            raise ProtocolError(f"malformed verdict {line.strip()!r}")
        return "V", parts[1] == "yes"
    if parts[0] == "Q":
        try:
            elems = [int(tok) for tok in parts[1:]]
        except ValueError:
            raise ProtocolError(f"malformed query {line.strip()!r}") from None
        if any(not 1 <= e <= n for e in elems):
            raise ProtocolError(f"query {line.strip()!r} leaves the ground set [1, {n}]")
        if len(set(elems)) != len(elems):
            raise ProtocolError(f"query {line.strip()!r} repeats an element")
        return "Q", frozenset(elems)
    raise ProtocolError(f"unknown request {line.strip()!r}")


class ProcessDecider:
    """Runs ``argv`` once per game and relays its queries to the oracle."""

    def __init__(self, argv, max_queries=None):
        self.argv = list(argv)
        self.max_queries = max_queries

    def __call__(self, meta, oracle, seed):
        doc = dict(meta, seed=seed)
        try:
            proc = subprocess.Popen(self.argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True, bufsize=1)
        except OSError as exc:
            raise ProtocolError(f"cannot start decider {self.argv[0]!r}: {exc.strerror}") from None
        try:
            proc.stdin.write(json.dumps(doc) + "\n")
            proc.stdin.flush()
            asked = 0
            while True:
                line = proc.stdout.readline()
                if not line:
                    raise ProtocolError("decider closed its output without a verdict")
                kind, value = parse_request(line, meta["n"])
                if kind == "V":
                    return value
                asked += 1
                if self.max_queries is not None and asked > self.max_queries:
                    raise ProtocolError(f"decider exceeded {self.max_queries} queries")
                proc.stdin.write("1\n" if oracle.is_independent(value) else "0\n")
                proc.stdin.flush()
        except BrokenPipeError:
            raise ProtocolError("decider exited mid-conversation") from None
        finally:
            for stream in (proc.stdin, proc.stdout):
                try:
                    stream.close()
                except OSError:
                    pass
            try:
                proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()

    def __repr__(self):
        return f"ProcessDecider({self.argv!r})"


class StdioOracle:
    """Decider-side view of the harness: queries go out on stdout, answers come back on stdin."""

    def __init__(self, n, infile=None, outfile=None):
        self.ground_set = tuple(range(1, n + 1))
        self.infile = infile or sys.stdin
        self.outfile = outfile or sys.stdout

    @property
    def n(self):
        return len(self.ground_set)

    def is_independent(self, S):
        self.outfile.write(" ".join(["Q"] + [str(e) for e in sorted(S)]) + "\n")
        self.outfile.flush()
        answer = self.infile.readline().strip()
        if answer not in ("0", "1"):
            raise ProtocolError(f"harness sent {answer!r}, expected 0 or 1")
        return answer == "1"


def serve(decider, infile=None, outfile=None):
    """Run a Python decider as a protocol-speaking process."""
    infile = infile or sys.stdin
    outfile = outfile or sys.stdout
    meta = json.loads(infile.readline())
    oracle = StdioOracle(meta["n"], infile, outfile)
    verdict = decider(meta, oracle, meta.get("seed", 0))
    outfile.write("V yes\n" if verdict else "V no\n")
    outfile.flush()
