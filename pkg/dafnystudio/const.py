DAFNY_EXTENSION = '.dfy'
TACTIC_EXTENSION = '.tactic'
JSON_EXTENSION = '.json'
JSONL_EXTENSION = '.jsonl'

RUN_REPORT_NAME = 'run_report.json'
CURVE_CSV_NAME = 'verified_by_attempt.csv'
ATTEMPTS_FOLDER_NAME = 'attempts'
REPAIR_REPORT_NAME = 'repair_report.json'
SKIPPED_SUFFIX = '.skipped' + JSONL_EXTENSION

TACTIC_HEADER_SEPARATOR = '---'
