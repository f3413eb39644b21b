import hashlib
import json


def translate_non_alphanumerics(to_translate, translate_to=u'_'):
    not_letters_or_digits = u'!"#%\'()*+,-./:;<=>?@[\\]^_`{|}~&$ '
    translate_table = dict((ord(char), translate_to) for char in not_letters_or_digits)
    return to_translate.translate(translate_table)


def slugify_title(title: str) -> str:
    words = translate_non_alphanumerics(title.lower(), u' ').split()
    return '-'.join(words)


def content_digest(*parts: str) -> str:
    digest = hashlib.sha256()
    for part in parts:
        digest.update(part.encode('utf-8'))
        digest.update(b'\x00')
    return digest.hexdigest()


def stable_json(data) -> str:
    """Deterministic JSON text for digests and byte-identical report files."""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, separators=(',', ':'))
