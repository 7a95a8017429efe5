"""JSON Schemas for the CLI's machine-readable reports."""

from __future__ import annotations

_LAURENT = {
    "type": "array",
    "items": {
        "type": "array",
        "items": {"type": "integer"},
        "minItems": 2,
        "maxItems": 2,
    },
}

KH_REPORT = {
    "type": "object",
    "required": ["writhe", "table", "jones_hat", "bracket", "euler_check"],
    "properties": {
        "writhe": {"type": "integer"},
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "dim"],
                "properties": {
                    "i": {"type": "integer"},
                    "j": {"type": "integer"},
                    "dim": {"type": "integer", "minimum": 0},
                },
            },
        },
        "jones_hat": _LAURENT,
        "bracket": _LAURENT,
        "euler_check": {"enum": ["ok", "mismatch"]},
    },
}

EVAL_REPORT = {
    "type": "object",
    "required": ["diagrams"],
    "properties": {
        "diagrams": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "code", "bracket", "jones_hat"],
                "properties": {
                    "kind": {"enum": ["closed", "long"]},
                    "code": {"type": "string"},
                    "bracket": _LAURENT,
                    "jones_hat": _LAURENT,
                    "v21": {"type": ["integer", "null"]},
                    "v22": {"type": ["integer", "null"]},
                    "arrow_pairing": {"type": ["integer", "null"]},
                },
            },
        }
    },
}

SUM_REPORT = {
    "type": "object",
    "required": ["invariant", "values"],
    "properties": {
        "invariant": {"type": "string"},
        "values": {"type": "array", "items": {"type": "integer"}},
    },
}

NTRIVIAL_REPORT = {
    "type": "object",
    "required": ["mode", "subsets", "aggregate"],
    "properties": {
        "mode": {"enum": ["GPV", "F"]},
        "aggregate": {"type": "boolean"},
        "subsets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["families", "status"],
                "properties": {
                    "families": {"type": "array", "items": {"type": "integer"}},
                    "status": {"enum": ["certified", "refuted", "unknown"]},
                    "trace_length": {"type": ["integer", "null"]},
                    "witness": {"type": ["array", "null"]},
                },
            },
        },
    },
}

TRIVIALIZE_REPORT = {
    "type": "object",
    "required": ["results"],
    "properties": {
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["code", "found"],
                "properties": {
                    "code": {"type": "string"},
                    "found": {"type": "boolean"},
                    "trace": {"type": ["array", "null"]},
                    "replayed_empty": {"type": ["boolean", "null"]},
                },
            },
        }
    },
}

BRAID_REPORT = {
    "type": "object",
    "properties": {
        "word": {"type": "string"},
        "code": {"type": "string"},
        "chords": {"type": "integer"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "letters", "chords", "skipped"],
            },
        },
    },
}

LEMMA5_REPORT = {
    "type": "object",
    "required": ["states"],
    "properties": {
        "states": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["markers", "i", "j"],
                "properties": {
                    "markers": {"type": "array", "items": {"enum": [1, -1]}},
                    "i": {"type": "integer"},
                    "j": {"type": "integer"},
                    "off_axis": {"type": "boolean"},
                },
            },
        }
    },
}
