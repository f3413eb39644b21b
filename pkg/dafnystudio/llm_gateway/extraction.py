import re

from dafnystudio.llm_gateway.errors import EmptyResponse

FENCE = re.compile(r'```[^\n`]*\n(.*?)```', re.DOTALL)
# an opening fence the response never closes, as in a reply cut off at the token limit
UNCLOSED_FENCE = re.compile(r'```[^\n`]*\n(.*)\Z', re.DOTALL)
DECLARATION = re.compile(r'\b(method|function|lemma)\b')


def extract_program(raw_response: str) -> str:
    """Content of the longest fenced block declaring a method, function or lemma.

    Falls back to the longest fenced block, then to the text after an unclosed opening fence,
    then to the whole response.
    """
    if not raw_response or not raw_response.strip():
        raise EmptyResponse('Model returned an empty response')

    blocks = [block.strip() for block in FENCE.findall(raw_response)]
    blocks = [block for block in blocks if block]
    declaring = [block for block in blocks if DECLARATION.search(block)]
    candidates = declaring or blocks
    if candidates:
        return max(candidates, key=len)
    unclosed = UNCLOSED_FENCE.search(raw_response)
    if unclosed and unclosed.group(1).strip():
        return unclosed.group(1).strip()
    return raw_response.strip()
