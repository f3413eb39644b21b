import json
import os
import shutil
import tempfile

from django.test import SimpleTestCase

from dafnystudio.corpus.bench import bench_run
from dafnystudio.corpus.curate import ExampleRole, curate, distinct_diagnostics
from dafnystudio.hints.store import HintMode
from dafnystudio.llm_gateway.providers import ScriptedProvider
from dafnystudio.orchestration.config import PipelineConfig
from dafnystudio.verification.oracle import ScriptedOracle, failing_outcome, verified_outcome
from tests import GOOD_INVARIANTS, Helper, by_attempt, count_program, fence, frozen_clock

INFORMAL = 'The invariants do not tie r to i, so nothing is known about r after the loop.\n' \
           'Fix category: strengthen invariant'


def good(name):
    return count_program(name, GOOD_INVARIANTS)


def weak(name):
    return count_program(name, ('r >= 0',))


class TestCurate(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.helper = Helper(self.tmp)
        names = ('A', 'B', 'C', 'D', 'E')
        corpus = self.helper.write_corpus('corpus', {n + '.dfy': count_program(n) for n in names})
        # C's ground truth does not verify and D has none
        self.ground_truth = self.helper.write_corpus('ground_truth', {'A.dfy': good('A'), 'B.dfy': good('B'),
                                                                      'C.dfy': weak('C'), 'E.dfy': good('E')})
        self.oracle = ScriptedOracle()
        for n in names:
            self.oracle.when(good(n), verified_outcome()).when(weak(n), failing_outcome())
        providers = {n + '.dfy': by_attempt(fence(weak(n)), fence(good(n))) for n in 'ABCD'}
        providers['E.dfy'] = by_attempt(fence(good('E')))
        self.run_dir = os.path.join(self.tmp, 'run')
        bench_run(corpus, PipelineConfig(max_attempts=2, hint_mode=HintMode.OFF), 1, self.run_dir,
                  lambda program_id, cfg: Helper.deps(providers[program_id], self.oracle), clock=frozen_clock)
        self.out = os.path.join(self.tmp, 'curated.jsonl')

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def examples(self):
        return [json.loads(line) for line in self.helper.read('curated.jsonl').splitlines()]

    def test_examples_from_failed_attempts(self):
        llm = ScriptedProvider([INFORMAL] * 2)

        count = curate(self.run_dir, self.ground_truth, llm, self.out, verify_fn=self.oracle)

        examples = self.examples()
        self.assertEqual(count, 4)
        self.assertEqual([(e['programId'], e['role']) for e in examples],
                         [('A.dfy', 'attempt-repair'), ('A.dfy', 'informalization'),
                          ('B.dfy', 'attempt-repair'), ('B.dfy', 'informalization')])
        repair, informal = examples[:2]
        self.assertEqual(repair['failedAttempt'], weak('A').strip())
        self.assertEqual(repair['target'], good('A'))
        self.assertEqual(repair['baseProgram'], count_program('A'))
        self.assertEqual(repair['verifierFeedback'], 'line 1: a postcondition could not be proved on this return path')
        self.assertEqual(informal['informalFeedback'], INFORMAL)
        self.assertIn('Error at line 1: a postcondition could not be proved', llm.prompts[0].user_turns[0])
        self.assertTrue(llm.prompts[0].user_turns[0].endswith('other.'))

        skipped = [json.loads(line) for line in self.helper.read('curated.jsonl.skipped.jsonl').splitlines()]
        self.assertEqual([record['programId'] for record in skipped], ['C.dfy', 'D.dfy'])
        self.assertTrue(skipped[0]['reason'].startswith('ground truth does not verify'))
        self.assertTrue(skipped[1]['reason'].startswith('no ground truth'))

    def test_informalization_failure_keeps_the_repair_example(self):
        count = curate(self.run_dir, self.ground_truth, ScriptedProvider([INFORMAL]), self.out,
                       verify_fn=self.oracle)

        self.assertEqual(count, 3)
        self.assertEqual([e['role'] for e in self.examples()].count(ExampleRole.ATTEMPT_REPAIR.value), 2)
        skipped = self.helper.read('curated.jsonl.skipped.jsonl')
        self.assertIn('informalization failed', skipped)

    def test_distinct_diagnostics(self):
        diagnostic = {'line': 3, 'col': 5, 'severity': 'error', 'message': 'assertion could not be proved'}
        attempts = [{'index': 0, 'preOutcome': {'diagnostics': [diagnostic]}},
                    {'index': 1, 'preOutcome': {'diagnostics': [dict(diagnostic, col=9),
                                                                dict(diagnostic, severity='warning', line=4)]}}]

        found = distinct_diagnostics(attempts)

        self.assertEqual(len(found), 1)
        self.assertEqual(found[0][1]['index'], 0)
