import logging
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from dafnystudio.dafny_surface.diff_check import DiffVerdict, ScanFailure, Verdict, diff_check
from dafnystudio.dafny_surface.scanner import parse_program
from dafnystudio.hints.store import load_tactics, retrieve
from dafnystudio.hints.tactics import Tactic, TacticStore
from dafnystudio.llm_gateway.builder import build_prompt_within
from dafnystudio.llm_gateway.errors import EmptyResponse, PromptTooLarge, ProviderError
from dafnystudio.llm_gateway.extraction import extract_program
from dafnystudio.llm_gateway.providers import CompletionFn, ProviderSchedule, run_provider
from dafnystudio.orchestration.config import PipelineConfig
from dafnystudio.orchestration.records import AttemptRecord, FailureReason, PipelineResult, PipelineStatus
from dafnystudio.pruning.pruner import prune_non_inductive
from dafnystudio.verification.binding import bind_diagnostics
from dafnystudio.verification.dafny_verifier import DafnyVerifier
from dafnystudio.verification.diagnostics import VerifierOutcome, VerifierStatus

logger = logging.getLogger(__name__)

VerifyFn = Callable[[str], VerifierOutcome]


@dataclass
class PipelineDeps:
    verify: VerifyFn
    complete: CompletionFn
    store: TacticStore = field(default_factory=TacticStore)
    schedule: Optional[ProviderSchedule] = None
    diff_check: Callable[..., DiffVerdict] = diff_check
    prune: Callable = prune_non_inductive
    retrieve: Callable[..., List[Tactic]] = retrieve
    clock: Callable[[], float] = time.monotonic

    def completion_for(self, attempt_index: int) -> CompletionFn:
        if self.schedule is not None:
            return self.schedule.for_attempt(attempt_index)
        return self.complete

    @staticmethod
    def providers_for(cfg: PipelineConfig) -> Tuple[CompletionFn, Optional[ProviderSchedule]]:
        complete = run_provider(cfg.provider)
        schedule = ProviderSchedule.from_entries(cfg.provider_schedule, default=complete) \
            if cfg.provider_schedule else None
        return complete, schedule

    @classmethod
    def from_config(cls, cfg: PipelineConfig) -> 'PipelineDeps':
        complete, schedule = cls.providers_for(cfg)
        store = load_tactics(cfg.tactics_dir) if cfg.tactics_dir else TacticStore()
        return cls(verify=DafnyVerifier(cfg.verifier), complete=complete, store=store, schedule=schedule)


class _Run(object):
    """State of one pipeline run over a base program."""

    def __init__(self, base: str, cfg: PipelineConfig, deps: PipelineDeps):
        self.base = base
        self.cfg = cfg
        self.deps = deps
        self.attempts: List[AttemptRecord] = []
        self.hints: Sequence[Tactic] = ()

    def result(self, status: PipelineStatus, **kwargs) -> PipelineResult:
        return PipelineResult(status, tuple(self.attempts), unsound=not self.cfg.diff_check_enabled, **kwargs)

    def failed(self, reason: FailureReason, detail: str = '') -> PipelineResult:
        logger.info('Pipeline failed after %s attempts: %s %s', len(self.attempts), reason.value, detail)
        return self.result(PipelineStatus.FAILED, failure_reason=reason, failure_detail=detail)

    def check(self, candidate: str) -> DiffVerdict:
        return self.deps.diff_check(candidate, self.base, self.cfg.strippable, self.cfg.lemma_allowlist)

    def final_gate(self, program_text: str) -> Optional[DiffVerdict]:
        """None when the program may be returned, else the rejecting verdict."""
        if not self.cfg.diff_check_enabled:
            return None
        verdict = self.check(program_text)
        if verdict.is_equal:
            return None
        logger.error('Final diff gate rejected a verified program: %s', verdict)
        return verdict

    def record(self, index, started, prompt, raw, candidate, **kwargs) -> AttemptRecord:
        record = AttemptRecord(index, prompt.digest, raw, candidate,
                               elapsed_seconds=self.deps.clock() - started, **kwargs)
        self.attempts.append(record)
        return record

    def run(self) -> PipelineResult:
        base_program = parse_program(self.base, self.cfg.lemma_allowlist)
        if not base_program.ok:
            return self.failed(FailureReason.TOOL_ERROR,
                               'base program does not scan: {0}'.format(base_program.scan_status))

        for index in range(self.cfg.max_attempts):
            started = self.deps.clock()
            try:
                prompt = build_prompt_within(self.base, self.attempts, self.hints,
                                             self.cfg.prompt_token_ceiling or None, self.cfg.templates_dir or None,
                                             self.cfg.strippable)
                raw = self.deps.completion_for(index)(prompt)
            except (ProviderError, PromptTooLarge) as e:
                return self.failed(FailureReason.PROVIDER_ERROR, str(e))
            logger.info('Attempt %s: prompt %s, %s response chars', index, prompt.digest[:12], len(raw))

            try:
                candidate = extract_program(raw)
                verdict = self.check(candidate) if self.cfg.diff_check_enabled else None
            except EmptyResponse as e:
                candidate = ''
                verdict = DiffVerdict(Verdict.SCAN_FAILURE, scan_failure=ScanFailure('candidate', str(e)))
            if verdict is not None and not verdict.is_equal:
                logger.info('Attempt %s rejected by the diff check: %s', index, verdict)
                self.record(index, started, prompt, raw, candidate, diff_verdict=verdict)
                continue

            pre = self.deps.verify(candidate)
            if pre.status is VerifierStatus.TOOL_ERROR:
                self.record(index, started, prompt, raw, candidate, diff_verdict=verdict, pre_outcome=pre)
                return self.failed(FailureReason.TOOL_ERROR, pre.exit_detail)
            if pre.verified:
                rejected = self.final_gate(candidate)
                self.record(index, started, prompt, raw, candidate, diff_verdict=rejected or verdict,
                            pre_outcome=pre)
                if rejected is None:
                    logger.info('Attempt %s verified', index)
                    return self.result(PipelineStatus.VERIFIED, final_program=candidate, verified_at_attempt=index)
                continue

            program = parse_program(candidate, self.cfg.lemma_allowlist)
            if program.ok:
                pre = bind_diagnostics(pre, program)
            prune_trace = post = None
            if self.cfg.prune_enabled and program.ok and pre.flagged_clause_ids():
                pruned = self.deps.prune(program, self.deps.verify, initial_outcome=pre,
                                         lemma_allowlist=self.cfg.lemma_allowlist)
                prune_trace, post = pruned.trace, pruned.final_outcome
                if pruned.verified:
                    rejected = self.final_gate(pruned.program.source)
                    if rejected is None:
                        self.record(index, started, prompt, raw, candidate, diff_verdict=verdict, pre_outcome=pre,
                                    prune_trace=prune_trace, post_outcome=post)
                        logger.info('Attempt %s verified after pruning %s clauses', index,
                                    len(prune_trace.removed_clause_ids))
                        return self.result(PipelineStatus.VERIFIED_AFTER_PRUNE,
                                           final_program=pruned.program.source, verified_at_attempt=index)

            self.hints = self.deps.retrieve(self.deps.store, candidate, pre.diagnostics, self.cfg.hint_mode)
            self.record(index, started, prompt, raw, candidate, diff_verdict=verdict, pre_outcome=pre,
                        prune_trace=prune_trace, post_outcome=post,
                        retrieved_tactic_ids=tuple(t.id for t in self.hints))
            logger.info('Attempt %s failed verification (%s), %s hints retrieved', index, pre.status.value,
                        len(self.hints))

        return self.failed(FailureReason.ATTEMPTS_EXHAUSTED)


def run_pipeline(base: str, cfg: Optional[PipelineConfig] = None,
                 deps: Optional[PipelineDeps] = None) -> PipelineResult:
    """Generate, diff-check, verify and prune annotation attempts until one verifies or the budget runs out."""
    cfg = cfg or PipelineConfig.from_settings()
    deps = deps or PipelineDeps.from_config(cfg)
    return _Run(base, cfg, deps).run()
