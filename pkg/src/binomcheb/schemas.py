"""JSON Schemas (draft 2020-12) for every document the CLI emits."""

_NUM = {"type": "number"}
_NUM_LIST = {"type": "array", "items": _NUM}
_COMPLEX = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}
_SCALAR_OR_COMPLEX = {"oneOf": [_NUM, {"type": "object", "required": ["re", "im"],
                                       "properties": {"re": _NUM, "im": _NUM},
                                       "additionalProperties": False}]}

ERROR = {
    "type": "object",
    "required": ["error", "message", "exit_code"],
    "properties": {
        "error": {"enum": ["bad_config", "precondition_failed", "numeric_failure", "io_failure"]},
        "message": {"type": "string"},
        "exit_code": {"enum": [2, 3, 4]},
    },
    "additionalProperties": False,
}

GEN = {
    "type": "object",
    "required": ["alpha", "m", "binomial_weights", "cheb_weights"],
    "properties": {
        "alpha": _NUM,
        "m": {"type": "integer", "minimum": 0},
        "binomial_weights": _NUM_LIST,
        "cheb_weights": _NUM_LIST,
        "monomial_coefficients": _NUM_LIST,
    },
    "additionalProperties": False,
}

EVAL = {
    "type": "object",
    "required": ["value"],
    "properties": {
        "value": _SCALAR_OR_COMPLEX,
        "derivative": _SCALAR_OR_COMPLEX,
        "representation": {"$ref": "#/$defs/representation"},
    },
    "additionalProperties": False,
}

REPRESENTATION = {
    "type": "object",
    "required": ["theta", "integral_term", "trig_term", "pm_direct", "abs_error"],
    "properties": {k: _NUM for k in
                   ("theta", "integral_term", "trig_term", "pm_direct", "abs_error")},
    "additionalProperties": False,
}
EVAL["$defs"] = {"representation": REPRESENTATION}

ZERO_REPORT = {
    "type": "object",
    "required": ["alpha", "m", "inside_count", "inside_zeros", "outside_zeros",
                 "residuals", "method", "flagged"],
    "properties": {
        "alpha": _NUM,
        "m": {"type": "integer", "minimum": 1},
        "inside_count": {"type": "integer", "minimum": 0},
        "inside_zeros": _NUM_LIST,
        "outside_zeros": {"type": "array", "items": _COMPLEX},
        "residuals": _NUM_LIST,
        "method": {"type": "string"},
        "flagged": {"type": "array", "items": _COMPLEX},
    },
    "additionalProperties": False,
}

LEMMA_SCAN = {
    "type": "object",
    "required": ["alpha", "grid", "lhs", "rhs", "ratio", "scaled_ratio", "K_emp", "M_emp"],
    "properties": {
        "alpha": _NUM,
        "grid": {"type": "array", "items": {
            "type": "array", "prefixItems": [{"type": "integer"}, _NUM],
            "minItems": 2, "maxItems": 2}},
        "lhs": _NUM_LIST,
        "rhs": _NUM_LIST,
        "ratio": _NUM_LIST,
        "scaled_ratio": _NUM_LIST,
        "K_emp": {"type": ["number", "null"]},
        "M_emp": {"type": ["integer", "null"]},
    },
    "additionalProperties": False,
}

ZERO_COUNT = {
    "type": "object",
    "required": ["alpha", "counts", "errors"],
    "properties": {
        "alpha": _NUM,
        "counts": {"type": "array", "items": {
            "type": "object", "required": ["m", "outside_count"],
            "properties": {"m": {"type": "integer"},
                           "outside_count": {"type": ["integer", "null"]}},
            "additionalProperties": False}},
        "errors": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "additionalProperties": False,
}

VERIFY = {
    "type": "object",
    "required": ["suite", "alpha", "passed", "tolerance", "max_error", "checks"],
    "properties": {
        "suite": {"enum": ["identity", "oracle", "gamma", "split", "signs"]},
        "alpha": _NUM,
        "passed": {"type": "boolean"},
        "tolerance": _NUM,
        "max_error": _NUM,
        "checks": {"type": "integer", "minimum": 0},
        "details": {"type": "object"},
    },
    "additionalProperties": False,
}

FIGURE = {
    "type": "object",
    "required": ["alpha", "m", "svg", "inside_count", "outside_count"],
    "properties": {
        "alpha": _NUM,
        "m": {"type": "integer"},
        "svg": {"type": "string"},
        "csv": {"type": ["string", "null"]},
        "inside_count": {"type": "integer"},
        "outside_count": {"type": "integer"},
    },
    "additionalProperties": False,
}

BY_COMMAND = {
    "gen": GEN,
    "eval": EVAL,
    "roots": ZERO_REPORT,
    "verify": VERIFY,
    "lemma-scan": LEMMA_SCAN,
    "zero-count": ZERO_COUNT,
    "figure": FIGURE,
}
