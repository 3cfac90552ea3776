"""Closed set of languages, canonicalization, and the culture-group country map."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownCountry, UnknownLanguage


@dataclass(frozen=True, order=True)
class Language:
    """One language from the closed set: canonical English name + ISO-639-1 code."""

    name: str
    code: str

    def __str__(self) -> str:
        return self.name


# Core 31-language training set, in canonical order. The five extra entries at
# the end come from the culture-group mapping and keep that listing's order.
_CORE = [
    ("Arabic", "ar"),
    ("Bulgarian", "bg"),
    ("Bengali", "bn"),
    ("German", "de"),
    ("Greek", "el"),
    ("English", "en"),
    ("Spanish", "es"),
    ("Finnish", "fi"),
    ("French", "fr"),
    ("Hebrew", "he"),
    ("Hindi", "hi"),
    ("Hungarian", "hu"),
    ("Indonesian", "id"),
    ("Italian", "it"),
    ("Japanese", "ja"),
    ("Korean", "ko"),
    ("Malay", "ms"),
    ("Dutch", "nl"),
    ("Polish", "pl"),
    ("Portuguese", "pt"),
    ("Romanian", "ro"),
    ("Russian", "ru"),
    ("Swedish", "sv"),
    ("Swahili", "sw"),
    ("Thai", "th"),
    ("Tagalog", "tl"),
    ("Turkish", "tr"),
    ("Ukrainian", "uk"),
    ("Urdu", "ur"),
    ("Vietnamese", "vi"),
    ("Chinese", "zh"),
]

_CULTURE_EXTRA = [
    ("Danish", "da"),
    ("Irish", "ga"),
    ("Scottish Gaelic", "gd"),
    ("Maori", "mi"),
    ("Norwegian", "no"),
]

#: All languages the toolkit knows about, in canonical (tie-break) order.
LANGUAGES: tuple[Language, ...] = tuple(Language(n, c) for n, c in _CORE + _CULTURE_EXTRA)

#: The 30 self-translation targets: the core set minus English.
TRANSLATION_TARGETS: tuple[Language, ...] = tuple(
    Language(n, c) for n, c in _CORE if n != "English"
)

ENGLISH = Language("English", "en")

_BY_NAME = {lang.name.lower(): lang for lang in LANGUAGES}
_BY_CODE = {lang.code: lang for lang in LANGUAGES}

# Common aliases seen in dataset files and endpoint configs.
_ALIASES = {
    "mandarin": "zh",
    "zh-cn": "zh",
    "zh-hans": "zh",
    "filipino": "tl",
    "fil": "tl",
    "gaelic": "gd",
    "māori": "mi",
    "te reo maori": "mi",
    "te reo māori": "mi",
    "bahasa indonesia": "id",
    "bahasa melayu": "ms",
    "norwegian bokmal": "no",
    "norwegian bokmål": "no",
    "nb": "no",
    "castilian": "es",
    "farsi": None,  # explicitly outside the closed set
}


def canonical_language(tag: str) -> Language:
    """Resolve a name, code, or alias (case-insensitive) to its canonical Language."""
    key = tag.strip().lower()
    if key in _BY_CODE:
        return _BY_CODE[key]
    if key in _BY_NAME:
        return _BY_NAME[key]
    alias = _ALIASES.get(key)
    if alias:
        return _BY_CODE[alias]
    raise UnknownLanguage(f"unknown language tag: {tag!r}")


def is_known_language_name(name: str) -> bool:
    """True when `name` (exact case) is a canonical language name."""
    lang = _BY_NAME.get(name.lower())
    return lang is not None and lang.name == name


def language_order(lang: Language) -> int:
    """Index of `lang` in the canonical order, used for deterministic tie-breaks."""
    return LANGUAGES.index(lang)


# Culture groups: language -> countries/regions. 25 groups covering 45 regions.
COUNTRY_GROUPS: dict[str, tuple[str, ...]] = {
    "Arabic": ("Algeria", "Arab", "Egypt", "Iraq", "Lebanon", "Syria", "Morocco", "Tunisia", "Jordan"),
    "Danish": ("Denmark",),
    "German": ("Germany", "Austria", "Switzerland"),
    "Greek": ("Greece", "Cyprus"),
    "English": ("United States",),
    "Spanish": ("Argentina", "Spain", "Cuba", "Chile", "Colombia", "Dominican Republic", "Mexico", "Peru"),
    "Finnish": ("Finland",),
    "French": ("France",),
    "Irish": ("Ireland",),
    "Scottish Gaelic": ("Scotland",),
    "Hindi": ("India",),
    "Indonesian": ("Indonesia",),
    "Italian": ("Italy",),
    "Japanese": ("Japan",),
    "Korean": ("Korea",),
    "Maori": ("New Zealand",),
    "Malay": ("Malaysia",),
    "Dutch": ("Netherlands", "Belgium"),
    "Norwegian": ("Norway",),
    "Polish": ("Poland",),
    "Portuguese": ("Brazil", "Portugal"),
    "Russian": ("Russia",),
    "Swedish": ("Sweden",),
    "Tagalog": ("Philippines",),
    "Chinese": ("China",),
}

_COUNTRY_TO_LANGUAGE = {
    country.lower(): _BY_NAME[group.lower()]
    for group, countries in COUNTRY_GROUPS.items()
    for country in countries
}


def culture_language_for(country: str) -> Language:
    """Return the language group owning `country` (case-insensitive)."""
    lang = _COUNTRY_TO_LANGUAGE.get(country.strip().lower())
    if lang is None:
        raise UnknownCountry(f"country not in the culture map: {country!r}")
    return lang
