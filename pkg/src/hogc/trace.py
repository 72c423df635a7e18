"""Proof trace export and independent re-verification.

A trace is line-oriented text, one primitive inference per line:

    <index> <rule-name> <args> ==> <hyps> |- <conclusion>

Arguments are ``@N`` references to earlier steps, ``{term}`` literals in
canonical syntax, and ``"name"`` axiom names; ``instantiate`` alternates
``{var} {term}`` pairs after the premise.  Hypotheses are ``;``-separated
canonical terms.  Lines starting with ``#`` are comments; the exporter
records the theory fingerprint and the root step indexes there.

``verify_trace`` replays every step through the kernel of a freshly
supplied theory and checks the claimed judgement against the replayed one,
so a trace is evidence that can be checked without trusting the process
that produced it.
"""

from __future__ import annotations

import hashlib

from . import kernel, syntax
from .kernel import Theorem, Var


class TraceError(Exception):
    def __init__(self, message, step=None):
        if step is not None:
            message = 'step %d: %s' % (step, message)
        super().__init__(message)
        self.step = step


def theory_fingerprint(th):
    """Stable digest of a theory's declared signature and axioms."""
    h = hashlib.sha256()
    h.update(th.name.encode())
    for name in sorted(th.base_types):
        h.update(('T %s\n' % name).encode())
    for name in sorted(th.constants):
        h.update(('C %s : %s\n' % (name, kernel.type_to_str(th.constants[name]))).encode())
    for name in sorted(th.axioms):
        h.update(('A %s : %s\n' % (name, syntax.canonical_term(th.axioms[name]))).encode())
    return h.hexdigest()


# ---------------------------------------------------------------------------
# Export

def _postorder(roots):
    """Provenance DAG in dependency order, iteratively (chains get deep)."""
    order = []
    seen = set()
    for root in roots:
        stack = [(root, False)]
        while stack:
            thm, expanded = stack.pop()
            if id(thm) in seen:
                continue
            if expanded:
                seen.add(id(thm))
                order.append(thm)
                continue
            stack.append((thm, True))
            for a in reversed(thm.args):
                if isinstance(a, Theorem):
                    stack.append((a, False))
    return order


def _fmt_args(rule, args, idx):
    out = []
    for a in args:
        if isinstance(a, Theorem):
            out.append('@%d' % idx[id(a)])
        elif isinstance(a, str):
            out.append('"%s"' % a)
        elif isinstance(a, tuple):
            for v, t in a:
                out.append('{%s}' % syntax.canonical_term(v))
                out.append('{%s}' % syntax.canonical_term(t))
        else:
            out.append('{%s}' % syntax.canonical_term(a))
    return ' '.join(out)


def export_trace(thms, comment=None):
    """Serialize theorems (with their whole derivations) to trace text."""
    if isinstance(thms, Theorem):
        thms = [thms]
    if not thms:
        raise TraceError('nothing to export')
    th = thms[0].theory
    for t in thms:
        if t.theory is not th:
            raise TraceError('theorems from different theories in one trace')
    order = _postorder(thms)
    idx = {id(t): i for i, t in enumerate(order)}
    lines = ['# hogc trace v1']
    if comment:
        lines.append('# %s' % comment)
    lines.append('# theory %s %s' % (th.name, theory_fingerprint(th)))
    lines.append('# roots %s' % ' '.join(str(idx[id(t)]) for t in thms))
    for i, t in enumerate(order):
        lines.append('%d %s %s ==> %s' % (i, t.rule, _fmt_args(t.rule, t.args, idx),
                                          syntax.canonical_theorem(t)))
    return '\n'.join(lines) + '\n'


# ---------------------------------------------------------------------------
# Verification

def _parse_args(s, step):
    """Split an argument field into @refs, {term} literals and "names"."""
    args = []
    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c == ' ':
            i += 1
        elif c == '@':
            j = i + 1
            while j < n and s[j].isdigit():
                j += 1
            if j == i + 1:
                raise TraceError('bad step reference', step)
            args.append(('ref', int(s[i + 1:j])))
            i = j
        elif c == '{':
            j = s.find('}', i)
            if j < 0:
                raise TraceError('unterminated term literal', step)
            args.append(('term', s[i + 1:j]))
            i = j + 1
        elif c == '"':
            j = s.find('"', i + 1)
            if j < 0:
                raise TraceError('unterminated name', step)
            args.append(('name', s[i + 1:j]))
            i = j + 1
        else:
            raise TraceError('bad argument syntax near %r' % s[i:i + 10], step)
    return args


def _need(args, step, *kinds):
    if len(args) != len(kinds) or any(a[0] != k for a, k in zip(args, kinds)):
        raise TraceError('malformed arguments', step)
    return [a[1] for a in args]


def _run_step(th, rule, args, steps, step, env_factory):
    def ref(i):
        if not 0 <= i < len(steps):
            raise TraceError('forward or dangling reference @%d' % i, step)
        return steps[i]

    def term(s):
        try:
            return syntax.parse_term(s, env_factory())
        except (syntax.ParseError, kernel.KernelError) as e:
            raise TraceError('bad term %r: %s' % (s, e), step)

    if rule == 'reflexivity':
        (t,) = _need(args, step, 'term')
        return kernel.reflexivity(th, term(t))
    if rule == 'symmetry':
        (i,) = _need(args, step, 'ref')
        return kernel.symmetry(ref(i))
    if rule == 'transitivity':
        i, j = _need(args, step, 'ref', 'ref')
        return kernel.transitivity(ref(i), ref(j))
    if rule == 'congruence':
        i, j = _need(args, step, 'ref', 'ref')
        return kernel.congruence(ref(i), ref(j))
    if rule == 'abstraction':
        v, i = _need(args, step, 'term', 'ref')
        vt = term(v)
        if not isinstance(vt, Var):
            raise TraceError('abstraction binder is not a variable', step)
        return kernel.abstraction(vt, ref(i))
    if rule == 'beta_conversion':
        (t,) = _need(args, step, 'term')
        return kernel.beta_conversion(th, term(t))
    if rule == 'pair_beta':
        (t,) = _need(args, step, 'term')
        return kernel.pair_beta(th, term(t))
    if rule == 'assume':
        (t,) = _need(args, step, 'term')
        return kernel.assume(th, term(t))
    if rule == 'modus_ponens_eq':
        i, j = _need(args, step, 'ref', 'ref')
        return kernel.modus_ponens_eq(ref(i), ref(j))
    if rule == 'deduct_antisym':
        i, j = _need(args, step, 'ref', 'ref')
        return kernel.deduct_antisym(ref(i), ref(j))
    if rule == 'axiom':
        (name,) = _need(args, step, 'name')
        return kernel.axiom(th, name)
    if rule == 'instantiate':
        if not args or args[0][0] != 'ref' or len(args) % 2 == 0:
            raise TraceError('malformed instantiate arguments', step)
        prem = ref(args[0][1])
        mapping = {}
        rest = args[1:]
        for k in range(0, len(rest), 2):
            if rest[k][0] != 'term' or rest[k + 1][0] != 'term':
                raise TraceError('malformed instantiate pair', step)
            v = term(rest[k][1])
            if not isinstance(v, Var):
                raise TraceError('instantiate target is not a variable', step)
            mapping[v] = term(rest[k + 1][1])
        return kernel.instantiate(prem, mapping)
    raise TraceError('unknown rule %s' % rule, step)


def verify_trace(text, th, strict_fingerprint=False):
    """Replay a trace in theory ``th`` and return its root theorems.

    Every step is re-executed through the kernel and compared with the
    claimed hypotheses and conclusion; any mismatch, malformed line or
    failing rule raises TraceError carrying the step index.
    """
    resolver = syntax.theory_phon_resolver(th)

    def env_factory():
        return syntax.TermEnv(theory=th, phon_resolver=resolver)

    steps = []
    roots = None
    expect = 0
    for raw in text.splitlines():
        line = raw.rstrip()
        if not line:
            continue
        if line.startswith('#'):
            parts = line[1:].split()
            if parts[:1] == ['roots']:
                roots = [int(p) for p in parts[1:]]
            elif parts[:1] == ['theory'] and len(parts) == 3 and strict_fingerprint:
                if parts[2] != theory_fingerprint(th):
                    raise TraceError('theory fingerprint mismatch: trace %s, theory %s'
                                     % (parts[2], theory_fingerprint(th)))
            continue
        head, sep, claim = line.partition(' ==> ')
        if not sep:
            raise TraceError('missing ==> in line: %r' % line, expect)
        fields = head.split(None, 2)
        if len(fields) < 2:
            raise TraceError('malformed step line: %r' % line, expect)
        try:
            index = int(fields[0])
        except ValueError:
            raise TraceError('bad step index in %r' % line, expect)
        if index != expect:
            raise TraceError('step index %d out of order (expected %d)'
                             % (index, expect), expect)
        rule = fields[1]
        args = _parse_args(fields[2] if len(fields) > 2 else '', index)
        try:
            thm = _run_step(th, rule, args, steps, index, env_factory)
        except kernel.KernelError as e:
            raise TraceError('rule failed: %s' % e, index)
        _check_claim(thm, claim, index, env_factory)
        steps.append(thm)
        expect += 1
    if not steps:
        raise TraceError('empty trace')
    if roots is None:
        roots = [len(steps) - 1]
    try:
        return [steps[i] for i in roots]
    except IndexError:
        raise TraceError('root index out of range')


def _check_claim(thm, claim, step, env_factory):
    parts = claim.split(' |- ')
    if len(parts) != 2:
        raise TraceError('malformed judgement: %r' % claim, step)
    hyp_part, concl_part = parts
    try:
        concl = syntax.parse_term(concl_part.strip(), env_factory())
        hyps = tuple(syntax.parse_term(h.strip(), env_factory())
                     for h in hyp_part.split(';') if h.strip())
    except (syntax.ParseError, kernel.KernelError) as e:
        raise TraceError('bad judgement syntax: %s' % e, step)
    if concl != thm.concl:
        raise TraceError('conclusion mismatch: claimed %s, derived %s'
                         % (concl_part.strip(), syntax.canonical_term(thm.concl)), step)
    if tuple(hyps) != tuple(thm.hyps):
        raise TraceError('hypothesis mismatch', step)
