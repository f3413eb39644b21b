from dafnystudio.orchestration.config import PipelineConfig
from dafnystudio.orchestration.records import (SUCCESS_STATUSES, AttemptRecord, FailureReason, PipelineResult,
                                               PipelineStatus)
from dafnystudio.orchestration.pipeline import PipelineDeps, run_pipeline
