from dafnystudio.corpus.reports import ProgramSummary, RepairEntry, RepairReport, RunReport
from dafnystudio.corpus.bench import (CorpusError, bench_run, discover_programs, load_run_artifacts,
                                      write_run_artifacts)
from dafnystudio.corpus.repair import repair_dataset
from dafnystudio.corpus.curate import CurationExample, ExampleRole, curate
