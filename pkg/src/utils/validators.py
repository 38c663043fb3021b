def validate_labels(values, field):
    """Validate a list of non-empty, distinct strings."""
    if not isinstance(values, list):
        return False, f"{field}: expected a list"
    for i, value in enumerate(values):
        if not isinstance(value, str) or not value.strip():
            return False, f"{field}[{i}]: expected a non-empty string"
    seen = set()
    for i, value in enumerate(values):
        if value in seen:
            return False, f"{field}[{i}]: duplicate label '{value}'"
        seen.add(value)
    return True, None


def validate_chain_document(doc):
    """Validate the shape and content of a chain document."""
    if not isinstance(doc, dict):
        return False, "document must be a JSON object"

    for key in ("universe", "alphabet", "partitions"):
        if key not in doc:
            return False, f"{key}: missing field"

    is_valid, error = validate_labels(doc["universe"], "universe")
    if not is_valid:
        return False, error
    if not doc["universe"]:
        return False, "universe: must not be empty"

    is_valid, error = validate_labels(doc["alphabet"], "alphabet")
    if not is_valid:
        return False, error
    if not doc["alphabet"]:
        return False, "alphabet: must not be empty"

    partitions = doc["partitions"]
    if not isinstance(partitions, list):
        return False, "partitions: expected a list of block lists"
    universe = set(doc["universe"])
    for t, blocks in enumerate(partitions):
        if not isinstance(blocks, list):
            return False, f"partitions[{t}]: expected a list of blocks"
        if len(blocks) != len(doc["alphabet"]):
            return False, (
                f"partitions[{t}]: has {len(blocks)} blocks but the alphabet has "
                f"{len(doc['alphabet'])} letters"
            )
        placed = {}
        for b, block in enumerate(blocks):
            if not isinstance(block, list) or not block:
                return False, f"partitions[{t}][{b}]: expected a non-empty list of labels"
            for label in block:
                if not isinstance(label, str):
                    return False, f"partitions[{t}][{b}]: expected string labels"
                if label not in universe:
                    return False, f"partitions[{t}][{b}]: '{label}' is not in the universe"
                if label in placed:
                    return False, f"partitions[{t}][{b}]: '{label}' already appears in block {placed[label]}"
                placed[label] = b
        uncovered = [label for label in doc["universe"] if label not in placed]
        if uncovered:
            return False, f"partitions[{t}]: elements in no block: {', '.join(uncovered)}"
    return True, None


def validate_seed(seed):
    """Seeds are mandatory non-negative integers."""
    if seed is None:
        return False, "--seed is required for randomized commands"
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        return False, f"seed must be a non-negative integer, got {seed!r}"
    return True, None


def validate_sample_size(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        return False, f"sample size must be a non-negative integer, got {n!r}"
    return True, None


def validate_permutation(text):
    """Parse '2,1,3' style codon-position orders."""
    try:
        order = tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError:
        return False, f"'{text}' is not a comma-separated list of positions"
    if sorted(order) != [1, 2, 3]:
        return False, f"'{text}' is not a permutation of 1,2,3"
    return True, None

