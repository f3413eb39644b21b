import os
import stat

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'DAFNY_STUDIO.settings')
django.setup()

from dafnystudio.file_system_utils.file_system_client import FileSystemClient
from dafnystudio.orchestration.pipeline import PipelineDeps
from dafnystudio.verification.oracle import ScriptedOracle

# Partition step: base, a candidate that edits base code, and the verified annotation.
PARTITION_BASE = '''b := a+1;
while ( b < n )
// FILL IN INVARIANTS.
{
  if ( X[b] <= p ) {
    var t := X[b];
    X[b] := X[a];
    X[a] := t;
    a := a + 1;
  }
  b := b + 1;
}
'''

PARTITION_CHEAT = '''b := a;
while ( b < n )
  invariant a <= b <= n
{
  if ( X[b] <= p ) {
    var t := X[b];
    X[b] := X[a];
    X[a] := t;
    a := a + 1;
  }
  b := b + 1;
}
'''

PARTITION_GROUND_TRUTH = '''b := a+1;
while ( b < n )
invariant 0 <= a < b <= n+1
invariant (b == n+1) ==> (a == n)
{
  if ( X[b] <= p ) {
    var t := X[b];
    X[b] := X[a];
    X[a] := t;
    a := a + 1;
  }
  b := b + 1;
}
'''

ONLINE_MAX_HEADER = '''method onlineMax(a: array<int>, x: int) returns (ghost m: int, p: int)
  requires 1 <= x < a.Length
  requires a.Length != 0
  ensures x <= p < a.Length
  ensures forall i :: 0 <= i < x ==> a[i] <= m
  ensures exists i :: 0 <= i < x && a[i] == m
  ensures x <= p < a.Length-1 ==> (forall i :: 0 <= i < p ==> a[i] < a[p])
  ensures (forall i :: x <= i < a.Length && a[i] <= m) ==> p == a.Length - 1
{
  p := 0; var best := a[0]; var i := 1; i := x;
  while i < a.Length
'''

ONLINE_MAX_LOOP_BODY = '''  {
    if a[i] > best {
      p := i;
      return;
    }
    i := i + 1;
  }
  p := a.Length - 1;
}
'''

ONLINE_MAX_INVARIANTS = '''    invariant x <= i <= a.Length
    invariant forall j :: 0 <= j < x ==> a[j] <= m
    invariant exists j :: 0 <= j < x && a[j] == m
    invariant forall j :: x <= j < i ==> a[j] <= m
    invariant i < a.Length ==> p == 0
'''

ONLINE_MAX_BASE = ONLINE_MAX_HEADER + ONLINE_MAX_LOOP_BODY
ONLINE_MAX_PRUNED = ONLINE_MAX_HEADER + ONLINE_MAX_INVARIANTS + ONLINE_MAX_LOOP_BODY
ONLINE_MAX_ATTEMPT = ONLINE_MAX_HEADER + ONLINE_MAX_INVARIANTS \
    + '    invariant i == a.Length ==> p == a.Length - 1\n' + ONLINE_MAX_LOOP_BODY
NON_INDUCTIVE_CLAUSE = 'i == a . Length ==> p == a . Length - 1'

ONLY_ONCE_HEADER = '''method only_once<T(==)>(a: array<T>, key: T) returns (b:bool)
ensures (multiset(a[..])[key] ==1 ) <==> b
{
var i := 0; b := false; var keyCount := 0;
while i < a.Length
'''

ONLY_ONCE_INVARIANTS = ''' invariant 0 <= i <= a.Length
 invariant keyCount == multiset(a[..i])[key]
 invariant b <==> keyCount == 1
'''

ONLY_ONCE_LOOP = '''{
if (a[i] == key){
 keyCount := keyCount + 1;
}
if (keyCount == 1) { b := true; }
else { b := false; }
 i := i + 1;
}
'''

ONLY_ONCE_BASE = ONLY_ONCE_HEADER + ONLY_ONCE_LOOP + '}\n'
ONLY_ONCE_FAILED = ONLY_ONCE_HEADER + ONLY_ONCE_INVARIANTS + ONLY_ONCE_LOOP + '}\n'
ONLY_ONCE_VERIFIED = ONLY_ONCE_HEADER + ONLY_ONCE_INVARIANTS + ONLY_ONCE_LOOP \
    + 'assert a[..] == a[..a.Length];\n}\n'

SLICING_TACTIC_RESPONSE = '''Tactic: Bridging Partial and Full Array Slices

When working with array slices in loop invariants, add explicit assertions to connect the final loop state with the postcondition's array representation.

Specifically:
- For an array `a`, if your loop invariant uses `a[..i]` and your postcondition uses `a[..]`
- Add `assert a[..a.Length] == a[..];` after the loop
- This bridges the gap between the loop's final state (`i == a.Length`) and the postcondition's requirements

This pattern applies to any array verification problem where:
1. Loop invariants track properties over `a[..i]`
2. Postconditions reference properties over `a[..]`
3. The connection between these two slice representations needs to be made explicit for the verifier
'''

GET_EVEN_HEADER = '''method {name}(s: array<nat>) modifies s
  ensures forall i :: 0 <= i < s.Length ==>
    if old(s[i]) % 2 == 1 then s[i] == old(s[i]) + 1
    else s[i] == old(s[i])
{{
  var i := 0;
  while i < s.Length
'''

GET_EVEN_INVARIANTS = '''    invariant 0 <= i <= s.Length
    invariant forall j :: 0 <= j < i ==>
      if old(s[j]) % 2 == 1 then s[j] == old(s[j]) + 1
      else s[j] == old(s[j])
    invariant forall j :: i <= j < s.Length ==> s[j] == old(s[j])
'''

# what an ad hoc line-based remover leaves behind of the multiline invariant
GET_EVEN_LEFTOVER = '''      if old(s[j]) % 2 == 1 then s[j] == old(s[j]) + 1
      else s[j] == old(s[j])
'''

GET_EVEN_BODY = '''  {
    if s[i] % 2 == 1 {
      s[i] := s[i] + 1;
    }
    i := i + 1;
  }
}
'''


def get_even(name='GetEven', annotated=True, broken=False) -> str:
    middle = GET_EVEN_INVARIANTS if annotated else GET_EVEN_LEFTOVER if broken else ''
    return GET_EVEN_HEADER.format(name=name) + middle + GET_EVEN_BODY


GET_EVEN_GROUND_TRUTH = get_even()
GET_EVEN_BASE = get_even(annotated=False)
GET_EVEN_BROKEN = get_even(annotated=False, broken=True)

COUNT_TEMPLATE = '''method {name}(n: nat) returns (r: nat)
  ensures r == n
{{
  r := 0;
  var i := 0;
  while i < n
{invariants}  {{
    r := r + 1;
    i := i + 1;
  }}
}}
'''

GOOD_INVARIANTS = ('0 <= i <= n', 'r == i')


def count_program(name='Count', invariants=()) -> str:
    """A counting loop, optionally annotated with the given invariant expressions."""
    lines = ''.join('    invariant {0}\n'.format(text) for text in invariants)
    return COUNT_TEMPLATE.format(name=name, invariants=lines)


# A base that already carries a checked assertion in Main
SUM_BASE = '''method Sum(n: nat) returns (r: nat)
  ensures r == n * (n + 1) / 2
{
  r := 0;
  var i := 0;
  while i < n
  {
    i := i + 1;
    r := r + i;
  }
}

method Main() {
  var r := Sum(3);
  assert r == 6;
}
'''
SUM_ANNOTATED = SUM_BASE.replace('  while i < n\n', '  while i < n\n    invariant 0 <= i <= n\n'
                                                    '    invariant r == i * (i + 1) / 2\n')


def fence(program: str, prose: str = 'Here is the annotated program.') -> str:
    return '{0}\n\n```dafny\n{1}```\n'.format(prose, program if program.endswith('\n') else program + '\n')


def by_attempt(*responses):
    """Completion function answering the k-th attempt of a run with responses[k] (last one repeats)."""
    def respond(prompt):
        attempt = prompt.text.count('\n\nAttempt ')
        return responses[min(attempt, len(responses) - 1)]
    return respond


def frozen_clock():
    return 0.0


def fake_verifier(folder, body):
    """Executable shell script standing in for the dafny binary."""
    path = os.path.join(folder, 'fake-dafny')
    with open(path, 'w', encoding='utf-8') as stream:
        stream.write('#!/bin/sh\n' + body)
    os.chmod(path, os.stat(path).st_mode | stat.S_IXUSR)
    return path


class Helper(object):

    def __init__(self, root: str = ''):
        self.root = root
        self.fs_client = FileSystemClient()

    def write(self, relative_path: str, content: str) -> str:
        path = os.path.join(self.root, *relative_path.split('/'))
        status = self.fs_client.write_text_file(path, content)
        assert status.ok, status.message
        return path

    def write_corpus(self, folder: str, programs: dict) -> str:
        for program_id, text in programs.items():
            self.write('{0}/{1}'.format(folder, program_id), text)
        return os.path.join(self.root, folder)

    def read(self, relative_path: str) -> str:
        status, text = self.fs_client.read_text_file(os.path.join(self.root, *relative_path.split('/')))
        assert status.ok, status.message
        return text

    @staticmethod
    def deps(complete, oracle: ScriptedOracle, **kwargs) -> PipelineDeps:
        kwargs.setdefault('clock', frozen_clock)
        return PipelineDeps(verify=oracle, complete=complete, **kwargs)
