"""Command-line behavior: reports, exit codes, proof emission, determinism."""

import os
import subprocess
import sys

import pytest

from hogc import cli
from hogc.cli import RunConfig, main

import helpers


@pytest.fixture(scope='module')
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp('cli')
    paths = {}
    for name in ('toy', 'ambig', 'boolsem', 'eps'):
        p = d / ('%s.hog' % name)
        p.write_text(getattr(helpers, name.upper()))
        paths[name] = str(p)
    u = d / 'universe.txt'
    u.write_text('p\nq\np /\\ q\n')
    paths['universe'] = str(u)
    paths['dir'] = d
    return paths


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


# ---------------------------------------------------------------------------
# check

def test_check(files, capsys):
    code, out = _run(capsys, ['check', '-g', files['toy']])
    assert code == 0
    assert 'grammar: toy' in out
    assert 'alphabet: fajdo blt awl' in out
    assert 'lexemes: 3  rules: 1' in out
    assert 'lex.FIDO' in out and 'rule.SUBJ' in out
    assert out.endswith('check ok\n')


def test_check_requires_grammar(capsys):
    code, out = _run(capsys, ['check'])
    assert code == 2
    assert 'check error:' in out and 'grammar file is required' in out


def test_check_missing_file(capsys):
    code, out = _run(capsys, ['check', '-g', '/nonexistent/g.hog'])
    assert code == 2
    assert 'check error:' in out


def test_bad_grammar_source(files, capsys):
    p = files['dir'] / 'bad.hog'
    p.write_text('alphabet: a\nsigntype S sem Bool\nsigntype S sem Bool\n')
    code, out = _run(capsys, ['check', '-g', str(p)])
    assert code == 2
    assert 'duplicate sign type' in out


# ---------------------------------------------------------------------------
# parse

def test_parse_listing(files, capsys):
    code, out = _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt'])
    assert code == 0
    assert 'word: fajdo blt' in out
    assert 'parses: 1' in out
    assert '[0] sign type S, depth 2' in out
    assert 'meaning: barks(fido)' in out
    assert out.endswith('parse ok\n')


def test_parse_ambiguous_order(files, capsys):
    code, out = _run(capsys, ['parse', '-g', files['ambig'], '-w', 'fajdo blt'])
    assert code == 0
    assert 'parses: 2' in out
    assert out.index('barks(fido)') < out.index('howls(fido)')


def test_parse_member_yes(files, capsys):
    code, out = _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt',
                              '-m', 'barks(fido)'])
    assert code == 0
    assert 'member: yes' in out


def test_parse_member_no(files, capsys):
    code, out = _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt',
                              '-m', 'howls(fido)'])
    assert code == 1
    assert 'member: no' in out and 'parse ok' not in out


def test_parse_member_up_to_equivalence(files, capsys):
    code, out = _run(capsys, ['parse', '-g', files['boolsem'],
                              '-w', 'nicht ja', '-m', 'false'])
    assert code == 0
    assert 'member: yes' in out and 'meaning: false' in out
    code, out = _run(capsys, ['parse', '-g', files['boolsem'],
                              '-w', 'nicht ja', '-m', 'true'])
    assert code == 1


def test_parse_bad_inputs(files, capsys):
    code, out = _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt',
                              '-m', 'barks('])
    assert code == 2 and 'parse error:' in out
    code, out = _run(capsys, ['parse', '-g', files['toy'], '-w', 'zzz'])
    assert code == 2 and 'alphabet' in out


def test_parse_empty_word(files, capsys):
    code, out = _run(capsys, ['parse', '-g', files['eps'], '-w', '', '-k', '1'])
    assert code == 0
    assert 'word: (empty)' in out and 'parses: 1' in out


# ---------------------------------------------------------------------------
# proof emission and trace-verify

def test_emit_proof_then_verify(files, capsys):
    tr = str(files['dir'] / 'parse.trace')
    code, _ = _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt',
                            '--emit-proof', tr])
    assert code == 0
    text = open(tr).read()
    assert text.startswith('# hogc trace v1\n')
    code, out = _run(capsys, ['trace-verify', '-g', files['toy'], tr])
    assert code == 0
    assert 'verified roots: 2' in out
    assert out.endswith('trace-verify ok\n')


def test_trace_verify_detects_tampering(files, capsys):
    tr = str(files['dir'] / 'tampered.trace')
    _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt',
                  '--emit-proof', tr])
    lines = open(tr).read().splitlines()
    content = [i for i, l in enumerate(lines) if l and not l.startswith('#')]
    i = content[-1]
    lines[i] = lines[i].partition(' ==> ')[0] + ' ==>  |- true'
    open(tr, 'w').write('\n'.join(lines) + '\n')
    code, out = _run(capsys, ['trace-verify', '-g', files['toy'], tr])
    assert code == 1
    assert 'trace-verify FAIL' in out and 'mismatch' in out


def test_trace_verify_wrong_theory(files, capsys):
    tr = str(files['dir'] / 'toy.trace')
    _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt',
                  '--emit-proof', tr])
    code, out = _run(capsys, ['trace-verify', tr])  # core theory, no grammar
    assert code == 1
    assert 'trace-verify FAIL' in out


def test_trace_verify_missing_file(capsys):
    code, out = _run(capsys, ['trace-verify', '/nonexistent.trace'])
    assert code == 2


# ---------------------------------------------------------------------------
# merge

def test_merge_with_cases_certificate(files, capsys):
    cert = files['dir'] / 'cases.cert'
    cert.write_text('target cond[Bool](barks(fido), howls(fido), q)\n'
                    'by cases q\n')
    tr = str(files['dir'] / 'merge.trace')
    code, out = _run(capsys, ['merge', '-g', files['ambig'],
                              '-w', 'fajdo blt', '0', '1',
                              '--cert', str(cert), '--emit-proof', tr])
    assert code == 0
    assert 'merged parses 0 and 1' in out
    assert 'meaning: cond[Bool](barks(fido), howls(fido), q)' in out
    assert out.endswith('merge ok\n')
    code, out = _run(capsys, ['trace-verify', '-g', files['ambig'], tr])
    assert code == 0 and 'verified roots: 2' in out


def test_merge_with_left_certificate(files, capsys):
    cert = files['dir'] / 'left.cert'
    cert.write_text('target barks(fido)\nby left\n')
    code, out = _run(capsys, ['merge', '-g', files['ambig'],
                              '-w', 'fajdo blt', '0', '1',
                              '--cert', str(cert)])
    assert code == 0
    assert 'meaning: barks(fido)' in out


def test_merge_errors(files, capsys):
    cert = files['dir'] / 'stale.cert'
    cert.write_text('target howls(fido)\nby left\n')
    code, out = _run(capsys, ['merge', '-g', files['ambig'],
                              '-w', 'fajdo blt', '0', '1',
                              '--cert', str(cert)])
    assert code == 2 and 'by left requires' in out
    code, out = _run(capsys, ['merge', '-g', files['ambig'],
                              '-w', 'fajdo blt', '0', '5',
                              '--cert', str(cert)])
    assert code == 2 and 'out of range' in out


# ---------------------------------------------------------------------------
# closure

def test_closure_report(files, capsys):
    code, out = _run(capsys, ['closure', '-u', files['universe'], 'p', 'q'])
    assert code == 0
    assert 'universe: 3 terms over variables p q' in out
    assert 'input logically closed: no' in out
    assert out.endswith('closure ok\n')
    code2, out2 = _run(capsys, ['closure', '-u', files['universe'], 'p', 'q'])
    assert (code2, out2) == (code, out)


def test_closure_requires_universe(capsys):
    code, out = _run(capsys, ['closure', 'p'])
    assert code == 2 and 'universe file is required' in out


def test_closure_bad_subset_term(files, capsys):
    code, out = _run(capsys, ['closure', '-u', files['universe'], 'p \\/ q'])
    assert code == 2 and 'not in the universe' in out


# ---------------------------------------------------------------------------
# output modes

def test_out_file_plain_even_with_color(files, capsys, monkeypatch):
    monkeypatch.setenv('HOGC_COLOR', '1')
    rpt = files['dir'] / 'report.txt'
    code, out = _run(capsys, ['check', '-g', files['toy'], '-o', str(rpt)])
    assert code == 0 and out == ''
    text = rpt.read_text()
    assert text.endswith('check ok\n') and '\x1b[' not in text


def test_color_env(files, capsys, monkeypatch):
    monkeypatch.setenv('HOGC_COLOR', '1')
    code, out = _run(capsys, ['check', '-g', files['toy']])
    assert code == 0
    assert out.endswith('check \x1b[32mok\x1b[0m\n')
    monkeypatch.setenv('HOGC_COLOR', '0')
    _, out = _run(capsys, ['check', '-g', files['toy']])
    assert '\x1b[' not in out


def test_color_flag(files, capsys):
    code, out = _run(capsys, ['check', '-g', files['toy'], '--color'])
    assert '\x1b[32mok\x1b[0m' in out


def test_color_marks_failures(files, capsys, monkeypatch):
    monkeypatch.setenv('HOGC_COLOR', '1')
    tr = str(files['dir'] / 'color.trace')
    _run(capsys, ['parse', '-g', files['toy'], '-w', 'fajdo blt',
                  '--emit-proof', tr])
    lines = open(tr).read().splitlines()
    i = max(i for i, l in enumerate(lines) if l and not l.startswith('#'))
    lines[i] = lines[i].partition(' ==> ')[0] + ' ==>  |- true'
    open(tr, 'w').write('\n'.join(lines) + '\n')
    code, out = _run(capsys, ['trace-verify', '-g', files['toy'], tr])
    assert code == 1 and '\x1b[31mFAIL\x1b[0m' in out


def test_run_config_api(files, tmp_path):
    rpt = tmp_path / 'direct.txt'
    code = cli.run(RunConfig(command='parse', grammar=files['toy'],
                             word='fajdo blt', depth=2, out=str(rpt)))
    assert code == 0
    assert 'parses: 1' in rpt.read_text()


# ---------------------------------------------------------------------------
# determinism across interpreter hash seeds

def test_reports_hash_seed_independent(files):
    def run_with_seed(seed, argv):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        env.pop('HOGC_COLOR', None)
        r = subprocess.run([sys.executable, '-m', 'hogc.cli'] + argv,
                           capture_output=True, env=env)
        assert r.returncode == 0, r.stderr
        return r.stdout

    for argv in (['parse', '-g', files['ambig'], '-w', 'fajdo blt'],
                 ['closure', '-u', files['universe'], 'p', 'q'],
                 ['check', '-g', files['boolsem']]):
        assert run_with_seed('0', argv) == run_with_seed('1', argv)
