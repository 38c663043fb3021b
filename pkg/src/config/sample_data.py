"""Built-in chain documents for the worked examples."""

# Five elements, binary, with a unary step on the way to u4 and u5
FIVE_CHAIN = {
    "universe": ["u1", "u2", "u3", "u4", "u5"],
    "alphabet": ["0", "1"],
    "partitions": [
        [["u1"], ["u2", "u3", "u4", "u5"]],
        [["u1", "u2", "u3"], ["u4", "u5"]],
        [["u1", "u2"], ["u3", "u4", "u5"]],
        [["u1", "u2", "u3", "u4"], ["u5"]],
    ],
}

# Three elements: a is split off first, then b from c
THREE_CHAIN = {
    "universe": ["a", "b", "c"],
    "alphabet": ["0", "1"],
    "partitions": [
        [["a"], ["b", "c"]],
        [["a", "b"], ["c"]],
    ],
}


def _binary_cube(depth):
    labels = [format(i, f"0{depth}b") for i in range(2**depth)]
    return {
        "universe": labels,
        "alphabet": ["0", "1"],
        "partitions": [
            [[x for x in labels if x[t] == "0"], [x for x in labels if x[t] == "1"]]
            for t in range(depth)
        ],
    }


# Complete binary tree of depth three; each leaf is named by its own code word
CUBE_CHAIN = _binary_cube(3)

SINGLETON_CHAIN = {"universe": ["x"], "alphabet": ["0", "1"], "partitions": []}

SAMPLE_CHAINS = {
    "five": FIVE_CHAIN,
    "three": THREE_CHAIN,
    "cube": CUBE_CHAIN,
    "singleton": SINGLETON_CHAIN,
}
