"""A round-based simulation of passive-secure MPC over a multiplicative LSSS.

Input owners deal their inputs with the scheme.  Additions and scalings are
local.  A multiplication gate costs one round: every party multiplies its two
shares, re-deals the product, and each party recombines the sub-shares it
received with the recombination vector.  A final round broadcasts the output
wire's shares.
"""

from __future__ import annotations

import hashlib
import io
import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, PreconditionError
from .lsss import (DEFAULT_RANDOMNESS_BUDGET, AccessStructure, Scheme, is_Q2,
                   is_qualified, minimal_access_structure, multiplicativity, reconstruct, share)

__all__ = ["Gate", "Circuit", "Message", "SimNetwork", "PartyState", "MPCResult",
           "PassiveProtocol", "run_passive_mpc", "ViewAudit", "adversary_view_audit",
           "product_circuit", "affine_product_circuit"]

GATE_KINDS = ("input", "add", "mul", "scale", "output")


@dataclass(frozen=True)
class Gate:
    kind: str
    a: Optional[int] = None
    b: Optional[int] = None
    owner: Optional[int] = None
    constant: Optional[int] = None

    def to_dict(self) -> dict:
        d = {"op": self.kind}
        for name in ("owner", "a", "b", "constant"):
            v = getattr(self, name)
            if v is not None:
                d[name] = v
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Gate:
        if not isinstance(d, dict) or "op" not in d:
            raise ValueError(f"bad gate description {d!r}")
        extra = set(d) - {"op", "owner", "a", "b", "constant"}
        if extra:
            raise ValueError(f"unknown gate fields {sorted(extra)}")
        return cls(d["op"], d.get("a"), d.get("b"), d.get("owner"), d.get("constant"))


class Circuit:
    """Arithmetic circuit; wire w is the output of gate w."""

    def __init__(self, gates):
        self.gates = tuple(g if isinstance(g, Gate) else Gate.from_dict(g) for g in gates)
        self._validate()

    def _validate(self):
        outputs = 0
        for w, g in enumerate(self.gates):
            if g.kind not in GATE_KINDS:
                raise ValueError(f"gate {w}: unknown kind {g.kind!r}")
            need = {"input": (), "add": ("a", "b"), "mul": ("a", "b"),
                    "scale": ("a", "constant"), "output": ("a",)}[g.kind]
            for name in need:
                if getattr(g, name) is None:
                    raise ValueError(f"gate {w}: {g.kind} needs {name!r}")
            for name in ("a", "b"):
                v = getattr(g, name)
                if v is not None and name in need:
                    if not isinstance(v, int) or not 0 <= v < w:
                        raise ValueError(f"gate {w}: operand {v} must precede the gate")
                    if self.gates[v].kind == "output":
                        raise ValueError(f"gate {w}: cannot read an output gate")
            if g.kind == "input" and (not isinstance(g.owner, int) or g.owner < 1):
                raise ValueError(f"gate {w}: input needs a party index owner >= 1")
            outputs += g.kind == "output"
        if outputs != 1:
            raise ValueError(f"a circuit needs exactly one output gate, found {outputs}")

    @property
    def input_wires(self) -> list:
        return [w for w, g in enumerate(self.gates) if g.kind == "input"]

    @property
    def mul_count(self) -> int:
        return sum(g.kind == "mul" for g in self.gates)

    def evaluate(self, field, inputs) -> int:
        """Plaintext evaluation; ``inputs`` follow the order of the input gates."""
        vals = {}
        it = iter(_input_values(self, inputs))
        for w, g in enumerate(self.gates):
            if g.kind == "input":
                vals[w] = _element(field, next(it))
            elif g.kind == "add":
                vals[w] = field.add(vals[g.a], vals[g.b])
            elif g.kind == "mul":
                vals[w] = field.mul(vals[g.a], vals[g.b])
            elif g.kind == "scale":
                vals[w] = field.mul(g.constant % field.q, vals[g.a])
            else:
                return vals[g.a]
        raise AssertionError("unreachable: validated circuits have an output")

    def to_dict(self) -> dict:
        return {"gates": [g.to_dict() for g in self.gates]}

    @classmethod
    def from_dict(cls, d: dict) -> Circuit:
        if not isinstance(d, dict) or not isinstance(d.get("gates"), list):
            raise ValueError("circuit description needs a 'gates' list")
        return cls(d["gates"])

    @classmethod
    def load(cls, path) -> Circuit:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _input_values(circuit: Circuit, inputs) -> list:
    if isinstance(inputs, dict):
        vals = [inputs[w] for w in circuit.input_wires]
    else:
        vals = list(inputs)
    if len(vals) != len(circuit.input_wires):
        raise ValueError(f"circuit has {len(circuit.input_wires)} inputs, got {len(vals)}")
    return vals


def _element(field, v) -> int:
    if not isinstance(v, int) or not 0 <= v < field.q:
        raise ValueError(f"input {v!r} is not a field element encoding (0..{field.q - 1})")
    return v


def product_circuit(owner_a: int = 1, owner_b: int = 2) -> Circuit:
    return Circuit([Gate("input", owner=owner_a), Gate("input", owner=owner_b),
                    Gate("mul", 0, 1), Gate("output", 2)])


def affine_product_circuit() -> Circuit:
    """a*b + c with inputs owned by parties 1, 2, 3."""
    return Circuit([Gate("input", owner=1), Gate("input", owner=2), Gate("input", owner=3),
                    Gate("mul", 0, 1), Gate("add", 3, 2), Gate("output", 4)])


@dataclass(frozen=True)
class Message:
    round: int
    sender: int
    receiver: int
    payload: tuple        # (kind, wire, value)

    def to_dict(self) -> dict:
        kind, wire, value = self.payload
        return {"round": self.round, "from": self.sender, "to": self.receiver,
                "payload": {"kind": kind, "wire": wire, "value": value}}


class SimNetwork:
    """Mailboxes filled during a round and delivered when it closes."""

    def __init__(self, n: int):
        self.n = n
        self.round = 0
        self.log: list = []
        self._pending: list = []
        self.mailbox = {i: [] for i in range(1, n + 1)}

    def send(self, sender: int, receiver: int, payload):
        if not 1 <= receiver <= self.n:
            raise ValueError(f"no party {receiver}")
        self._pending.append(Message(self.round, sender, receiver, payload))

    def begin_round(self):
        self.round += 1
        for box in self.mailbox.values():
            box.clear()

    def end_round(self):
        for msg in self._pending:
            self.mailbox[msg.receiver].append(msg)
            self.log.append(msg)
        self._pending = []

    def transcript_lines(self) -> list:
        return [json.dumps(m.to_dict(), sort_keys=True) for m in self.log]


@dataclass
class PartyState:
    index: int
    rng: object
    registers: dict = field(default_factory=dict)

    def inbox(self, net: SimNetwork, kind: str) -> dict:
        """(sender, wire) -> value for this round's messages of one kind."""
        return {(m.sender, m.payload[1]): m.payload[2]
                for m in net.mailbox[self.index] if m.payload[0] == kind}


@dataclass
class MPCResult:
    output: int
    plaintext: int
    rounds: int
    messages: list            # Message log in delivery order

    @property
    def correct(self) -> bool:
        return self.output == self.plaintext

    @property
    def transcript(self) -> list:
        """One JSON line per message."""
        return [json.dumps(m.to_dict(), sort_keys=True) for m in self.messages]

    def transcript_text(self) -> str:
        return "".join(line + "\n" for line in self.transcript)

    def transcript_hash(self) -> str:
        return hashlib.sha256(self.transcript_text().encode("utf-8")).hexdigest()

    def write_transcript(self, path):
        with io.open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.transcript_text())


def _q2_hint(s: Scheme) -> str:
    g, n = s.provenance.get("genus"), s.n
    if g is None:
        return ""
    return (f" (m >= n/2 + 2g = {n / 2 + 2 * g:g} guarantees multiplicativity;"
            " the condition is sufficient only)")


class PassiveProtocol:
    """Preconditions are checked once; ``run`` may then be called many times."""

    def __init__(self, s: Scheme, access: Optional[AccessStructure] = None,
                 recombination=None):
        self.scheme = s
        r = recombination if recombination is not None else multiplicativity(s)
        if r is None:
            raise PreconditionError("scheme is not multiplicative" + _q2_hint(s))
        self.recombination = [int(x) for x in r]
        self.access = access or minimal_access_structure(s)
        if not is_Q2(self.access):
            raise PreconditionError("access structure is not Q2" + _q2_hint(s))

    def run(self, circuit: Circuit, inputs, seed=0, rngs=None) -> MPCResult:
        """Simulate the protocol.  ``rngs`` maps party -> random source (default: seeded)."""
        s, F, n = self.scheme, self.scheme.field, self.scheme.n
        values = _input_values(circuit, inputs)
        for g in circuit.gates:
            if g.kind == "input" and g.owner > n:
                raise ValueError(f"input owner {g.owner} is not a party (n = {n})")
        if rngs is None:
            rngs = {i: random.Random(f"{seed}/{i}") for i in range(1, n + 1)}
        parties = {i: PartyState(i, rngs[i]) for i in range(1, n + 1)}
        net = SimNetwork(n)
        owned = dict(zip(circuit.input_wires, values))

        # input round
        net.begin_round()
        for w in circuit.input_wires:
            owner = parties[circuit.gates[w].owner]
            sv = share(s, _element(F, owned[w]), owner.rng)
            for j in range(1, n + 1):
                net.send(owner.index, j, ("input", w, sv.shares[j - 1]))
        net.end_round()
        for p in parties.values():
            for (_, w), v in p.inbox(net, "input").items():
                p.registers[w] = v

        out_wire = None
        for w, g in enumerate(circuit.gates):
            if g.kind == "add":
                for p in parties.values():
                    p.registers[w] = F.add(p.registers[g.a], p.registers[g.b])
            elif g.kind == "scale":
                c = g.constant % F.q
                for p in parties.values():
                    p.registers[w] = F.mul(c, p.registers[g.a])
            elif g.kind == "mul":
                net.begin_round()
                for p in parties.values():
                    local = F.mul(p.registers[g.a], p.registers[g.b])
                    sv = share(s, local, p.rng)
                    for j in range(1, n + 1):
                        net.send(p.index, j, ("reshare", w, sv.shares[j - 1]))
                net.end_round()
                for p in parties.values():
                    got = p.inbox(net, "reshare")
                    acc = 0
                    for i in range(1, n + 1):
                        acc = F.add(acc, F.mul(self.recombination[i - 1], got[(i, w)]))
                    p.registers[w] = acc
            elif g.kind == "output":
                out_wire = g.a

        # output round
        net.begin_round()
        for p in parties.values():
            for j in range(1, n + 1):
                net.send(p.index, j, ("output", out_wire, p.registers[out_wire]))
        net.end_round()
        results = set()
        everyone = tuple(range(1, n + 1))
        for p in parties.values():
            got = {i: v for (i, _), v in p.inbox(net, "output").items()}
            results.add(reconstruct(s, everyone, got))
        if len(results) != 1:
            raise AssertionError("parties disagree on the output")
        return MPCResult(results.pop(), circuit.evaluate(F, values), net.round, list(net.log))


def run_passive_mpc(s: Scheme, circuit: Circuit, inputs, seed=0,
                    access: Optional[AccessStructure] = None) -> MPCResult:
    return PassiveProtocol(s, access).run(circuit, inputs, seed)


class _ScriptedRandom:
    """Serves draws from a shared tape, in the order the protocol asks for them."""

    def __init__(self, tape):
        self._tape = tape

    def randrange(self, q):
        v = next(self._tape)
        if not 0 <= v < q:
            raise ValueError("tape value out of range")
        return v


class _CountingRandom:
    def __init__(self, counter):
        self._counter = counter

    def randrange(self, q):
        self._counter[0] += 1
        return 0


@dataclass(frozen=True)
class ViewAudit:
    identical: bool
    qualified: bool
    method: str                 # "exhaustive" | "statistical" | "trivial"
    tapes: int
    max_distance: Optional[float] = None

    def to_dict(self) -> dict:
        return {"identical": self.identical, "qualified": self.qualified,
                "method": self.method, "tapes": self.tapes,
                "max_distance": self.max_distance,
                "flag": "statistical comparison only" if self.method == "statistical" else None}


def _view(result: MPCResult, A) -> tuple:
    """Messages sent to or by members of A, as (round, from, to, kind, wire, value)."""
    return tuple((m.round, m.sender, m.receiver) + m.payload
                 for m in result.messages if m.receiver in A or m.sender in A)


def adversary_view_audit(s: Scheme, circuit: Circuit, A, inputs1, inputs2,
                         budget: int = DEFAULT_RANDOMNESS_BUDGET,
                         samples: int = 10_000, tolerance: float = 0.1,
                         protocol: Optional[PassiveProtocol] = None) -> ViewAudit:
    """Compare the multisets of A's views over all random tapes for two input vectors.

    Falls back to comparing pairwise joint frequencies of view values over
    ``samples`` seeds when the tape space exceeds ``budget``.  Such verdicts
    are marked "statistical"; they can miss leakage visible only in
    higher-order correlations.
    """
    F = s.field
    proto = protocol or PassiveProtocol(s)
    if circuit.evaluate(F, inputs1) != circuit.evaluate(F, inputs2):
        raise PreconditionError("the two input vectors give different outputs")
    A = tuple(sorted(set(A)))
    qualified = bool(A) and is_qualified(s, A)
    if not A:
        return ViewAudit(True, False, "trivial", 0)
    counter = [0]
    probe = {i: _CountingRandom(counter) for i in range(1, s.n + 1)}
    proto.run(circuit, inputs1, rngs=probe)
    draws = counter[0]
    total = F.q ** draws
    if total <= budget:
        views = []
        for inputs in (inputs1, inputs2):
            c = Counter()
            for tape in itertools.product(range(F.q), repeat=draws):
                it = iter(tape)
                rngs = {i: _ScriptedRandom(it) for i in range(1, s.n + 1)}
                c[_view(proto.run(circuit, inputs, rngs=rngs), A)] += 1
            views.append(c)
        return ViewAudit(views[0] == views[1], qualified, "exhaustive", total)
    if samples < 10_000:
        raise BudgetExceeded("random tapes", total, budget)
    # Fallback: the message pattern is fixed, so compare the joint distribution
    # of every pair of view values between the two input vectors.
    arrays = []
    for tag, inputs in (("a", inputs1), ("b", inputs2)):
        rows = [[e[-1] for e in _view(proto.run(circuit, inputs, seed=f"audit-{tag}-{k}"), A)]
                for k in range(samples)]
        arrays.append(np.array(rows, dtype=np.int64))
    x, y = arrays
    q = F.q
    worst = 0.0
    for i in range(x.shape[1]):
        for j in range(i, x.shape[1]):
            hx = np.bincount(x[:, i] * q + x[:, j], minlength=q * q)
            hy = np.bincount(y[:, i] * q + y[:, j], minlength=q * q)
            worst = max(worst, float(np.abs(hx - hy).sum()) / (2 * samples))
    return ViewAudit(worst <= tolerance, qualified, "statistical", samples, worst)
