"""Hand-written base programs for the strip/diff property suites.

Markers are block comments, so every program below is a valid base as it
stands. /*@INV*/ sits between a loop condition and its body, /*@STMT*/ at a
statement boundary and /*@DEC*/ between a routine signature and its body.
"""

INV = '/*@INV*/'
STMT = '/*@STMT*/'
DEC = '/*@DEC*/'
MARKERS = (INV, STMT, DEC)

BASE_PROGRAMS = [
    # linear search
    '''method LinearSearch(a: array<int>, key: int) returns (idx: int)
  ensures 0 <= idx ==> idx < a.Length && a[idx] == key
{
  idx := 0;
  /*@STMT*/
  while idx < a.Length /*@INV*/
  {
    if a[idx] == key {
      /*@STMT*/
      return;
    }
    idx := idx + 1;
  }
  idx := -1;
  /*@STMT*/
}
''',
    # sum with a for loop
    '''method SumTo(n: nat) returns (s: nat)
  ensures s == n * (n + 1) / 2
{
  s := 0;
  for i := 1 to n + 1 /*@INV*/
  {
    s := s + i;
    /*@STMT*/
  }
}
''',
    # array maximum
    '''method Max(a: array<int>) returns (m: int)
  requires a.Length > 0
  ensures forall k :: 0 <= k < a.Length ==> a[k] <= m
  ensures exists k :: 0 <= k < a.Length && a[k] == m
{
  m := a[0];
  var i := 1;
  while i < a.Length /*@INV*/
  {
    if a[i] > m { m := a[i]; }
    /*@STMT*/
    i := i + 1;
  }
}
''',
    # in-place reverse
    '''method Reverse(a: array<char>)
  modifies a
  ensures forall k :: 0 <= k < a.Length ==> a[k] == old(a[a.Length - 1 - k])
{
  var lo, hi := 0, a.Length - 1;
  while lo < hi /*@INV*/
  {
    a[lo], a[hi] := a[hi], a[lo];
    /*@STMT*/
    lo, hi := lo + 1, hi - 1;
  }
}
''',
    # recursive function
    '''function Fact(n: nat): nat /*@DEC*/
{
  if n == 0 then 1 else n * Fact(n - 1)
}

method ComputeFact(n: nat) returns (r: nat)
  ensures r == Fact(n)
{
  r := 1;
  var i := 0;
  while i < n /*@INV*/
  {
    i := i + 1;
    r := r * i;
  }
  /*@STMT*/
}
''',
    # partition step
    '''b := a+1;
while ( b < n ) /*@INV*/
// FILL IN INVARIANTS.
{
  if ( X[b] <= p ) {
    var t := X[b];
    X[b] := X[a];
    X[a] := t;
    /*@STMT*/
    a := a + 1;
  }
  b := b + 1;
}
''',
    # online maximum
    '''method onlineMax(a: array<int>, x: int) returns (ghost m: int, p: int)
  requires 1 <= x < a.Length
  requires a.Length != 0
  ensures x <= p < a.Length
  ensures (forall i :: x <= i < a.Length && a[i] <= m) ==> p == a.Length - 1
{
  p := 0; var best := a[0]; var i := 1; i := x;
  /*@STMT*/
  while i < a.Length /*@INV*/
  {
    if a[i] > best {
      p := i;
      return;
    }
    i := i + 1;
  }
  p := a.Length - 1;
}
''',
    # single occurrence
    '''method only_once<T(==)>(a: array<T>, key: T) returns (b:bool)
ensures (multiset(a[..])[key] ==1 ) <==> b
{
var i := 0; b := false; var keyCount := 0;
while i < a.Length /*@INV*/
{
if (a[i] == key){
 keyCount := keyCount + 1;
}
if (keyCount == 1) { b := true; }
else { b := false; }
 i := i + 1;
}
/*@STMT*/
}
''',
    # bump odd elements
    '''method GetEven(s: array<nat>) modifies s
  ensures forall i :: 0 <= i < s.Length ==>
    if old(s[i]) % 2 == 1 then s[i] == old(s[i]) + 1
    else s[i] == old(s[i])
{
  var i := 0;
  while i < s.Length /*@INV*/
  {
    if s[i] % 2 == 1 {
      s[i] := s[i] + 1;
    }
    /*@STMT*/
    i := i + 1;
  }
}
''',
    # count occurrences in a sequence
    '''method CountOccurrences(s: seq<int>, x: int) returns (c: nat)
  ensures c == multiset(s)[x]
{
  c := 0;
  var i := 0;
  while i < |s| /*@INV*/
  {
    /*@STMT*/
    if s[i] == x {
      c := c + 1;
    }
    i := i + 1;
  }
  /*@STMT*/
}
''',
    # binary search
    '''predicate Sorted(a: array<int>)
  reads a
{
  forall j, k :: 0 <= j < k < a.Length ==> a[j] <= a[k]
}

method BinarySearch(a: array<int>, key: int) returns (index: int)
  requires Sorted(a)
  ensures 0 <= index ==> index < a.Length && a[index] == key
{
  var lo, hi := 0, a.Length;
  while lo < hi /*@INV*/
  {
    var mid := (lo + hi) / 2;
    /*@STMT*/
    if a[mid] < key {
      lo := mid + 1;
    } else if key < a[mid] {
      hi := mid;
    } else {
      return mid;
    }
  }
  index := -1;
}
''',
    # swap through out-parameters
    '''method Swap(x: int, y: int) returns (a: int, b: int)
  ensures a == y && b == x
{
  /*@STMT*/
  a := y;
  b := x;
  /*@STMT*/
}
''',
    # nested loops
    '''method Fill(m: array2<int>, v: int)
  modifies m
  ensures forall i, j :: 0 <= i < m.Length0 && 0 <= j < m.Length1 ==> m[i, j] == v
{
  var i := 0;
  while i < m.Length0 /*@INV*/
  {
    var j := 0;
    while j < m.Length1 /*@INV*/
    {
      m[i, j] := v;
      j := j + 1;
    }
    /*@STMT*/
    i := i + 1;
  }
}
''',
    # iterative fibonacci
    '''function Fib(n: nat): nat /*@DEC*/
{
  if n < 2 then n else Fib(n - 1) + Fib(n - 2)
}

method ComputeFib(n: nat) returns (b: nat)
  ensures b == Fib(n)
{
  var i, a := 0, 1;
  b := 0;
  while i < n /*@INV*/
  {
    a, b := a + b, a;
    i := i + 1;
  }
  /*@STMT*/
}
''',
    # copy a sequence into a fresh array
    '''method ToArray(s: seq<int>) returns (a: array<int>)
  ensures a.Length == |s| && a[..] == s
{
  a := new int[|s|];
  var i := 0;
  while i < |s| /*@INV*/
  {
    a[i] := s[i];
    i := i + 1;
  }
  /*@STMT*/
}
''',
    # lemma with a recursive proof
    '''function Sum(n: nat): nat
{
  if n == 0 then 0 else n + Sum(n - 1)
}

lemma SumFormula(n: nat)
  ensures 2 * Sum(n) == n * (n + 1)
  /*@DEC*/
{
  /*@STMT*/
  if n > 0 {
    SumFormula(n - 1);
    /*@STMT*/
  }
}
''',
    # class with a mutating method
    '''class Counter {
  var count: int

  constructor ()
    ensures count == 0
  {
    count := 0;
  }

  method Increment(times: nat)
    modifies this
    ensures count == old(count) + times
  {
    var k := 0;
    while k < times /*@INV*/
    {
      count := count + 1;
      k := k + 1;
    }
  }
}
''',
    # datatype and match
    '''datatype Tree = Leaf | Node(left: Tree, val: int, right: Tree)

function Size(t: Tree): nat /*@DEC*/
{
  match t
  case Leaf => 0
  case Node(l, _, r) => Size(l) + 1 + Size(r)
}

method Root(t: Tree) returns (v: int)
  requires t.Node?
  ensures v == t.val
{
  /*@STMT*/
  v := t.val;
}
''',
    # strings and characters
    '''method CountChar(s: string, ch: char) returns (n: nat)
  ensures n <= |s|
{
  n := 0;
  var i := 0;
  while i < |s| /*@INV*/
  {
    if s[i] == ch || s[i] == 'a' {
      n := n + 1;
    }
    i := i + 1;
  }
  /*@STMT*/
  print "counted", "\\n";
}
''',
    # downto loop
    '''method Countdown(n: nat) returns (steps: nat)
  ensures steps == n
{
  steps := 0;
  for i := n downto 0 /*@INV*/
  {
    steps := steps + 1;
  }
  /*@STMT*/
}
''',
    # set comprehension
    '''method Evens(s: set<int>) returns (e: set<int>)
  ensures forall x :: x in e ==> x % 2 == 0
{
  e := set x | x in s && x % 2 == 0;
  var rest := s;
  /*@STMT*/
  while rest != {} /*@INV*/
  {
    var y :| y in rest;
    rest := rest - {y};
  }
}
''',
    # integer square root
    '''method Sqrt(n: nat) returns (r: nat)
  ensures r * r <= n < (r + 1) * (r + 1)
{
  r := 0;
  while (r + 1) * (r + 1) <= n /*@INV*/
  {
    r := r + 1;
  }
  /*@STMT*/
}
''',
    # recursive power with a hex literal
    '''function Pow(b: int, e: nat): int /*@DEC*/
{
  if e == 0 then 1 else b * Pow(b, e - 1)
}

method Mask(x: int) returns (y: int)
  ensures y == x + 0x10
{
  y := x;
  /*@STMT*/
  y := y + 0x10;
}
''',
]

# (kind name, source text) of annotations that may be inserted at a marker
LOOP_ANNOTATIONS = [
    ('LoopInvariant', 'invariant 0 <= i'),
    ('LoopInvariant', 'invariant i <= |s|'),
    ('LoopInvariant', 'invariant forall k :: 0 <= k < i ==> k >= 0'),
    ('LoopInvariant', 'invariant multiset(a[..]) == multiset(old(a[..]))'),
    ('LoopInvariant', 'invariant (b == n+1) ==> (a == n)'),
    ('LoopInvariant', 'invariant 0 <= a < b <= n+1'),
    ('LoopInvariant', 'invariant x in {1, 2, 3}'),
    ('LoopInvariant', 'invariant true'),
    ('LoopInvariant', 'invariant s == []'),
    ('LoopInvariant', 'invariant c == \'a\''),
    ('LoopInvariant', 'invariant name != ""'),
    ('LoopInvariant', 'invariant 0x10 > 0 // bound'),
    ('LoopInvariant', 'invariant\n      forall j :: 0 <= j < i ==>\n        if j % 2 == 0 then j >= 0\n        else j > 0'),
    ('LoopDecreases', 'decreases n - i'),
    ('LoopDecreases', 'decreases |s| - i'),
    ('LoopDecreases', 'decreases if i < n then n - i else 0'),
]

STATEMENT_ANNOTATIONS = [
    ('AssertStmt', 'assert 0 <= 1;'),
    ('AssertStmt', 'assert forall k :: 0 <= k < 3 ==> k < 4;'),
    ('AssertStmt', 'assert a[..] == a[..a.Length];'),
    ('AssertStmt', 'assert {:split_here} 2 > 1;'),
    ('AssertStmt', '/* note */ assert 3 > 2;'),
    ('AssertByBlock', 'assert true by {\n      assert 1 == 1;\n    }'),
    ('CalcBlock', 'calc {\n      1 + 1;\n      == 2;\n    }'),
]

SIGNATURE_ANNOTATIONS = [
    ('MethodDecreases', 'decreases n'),
    ('MethodDecreases', 'decreases n, 0'),
]

POOLS = {INV: LOOP_ANNOTATIONS, STMT: STATEMENT_ANNOTATIONS, DEC: SIGNATURE_ANNOTATIONS}

# Operator replacements that keep a mutated program lexically valid
OPERATOR_SWAPS = {
    '+': '-', '-': '+', '<': '<=', '<=': '<', '>': '>=', '>=': '>', '==': '!=', '!=': '==',
    '&&': '||', '||': '&&', '*': '+', '/': '*', '%': '/', '==>': '<==>', '<==>': '==>',
}


def clean(program: str) -> str:
    """The base program without its markers."""
    for marker in MARKERS:
        program = program.replace(marker, '')
    return program
