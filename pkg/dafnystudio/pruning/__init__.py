from dafnystudio.pruning.pruner import (PruneFinalStatus, PruneResult, PruneRound, PruneTrace, RestoreReason,
                                        prune_non_inductive)
