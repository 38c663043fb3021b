def _quote(text):
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_label(node, max_listed=6):
    if node.is_leaf:
        return node.element
    if len(node.block) <= max_listed:
        return "{" + ",".join(node.block) + "}"
    return f"{len(node.block)} elements"


def render_dot(tree, name="CodeTree"):
    """Render a code tree as a Graphviz digraph, leaves boxed, edges lettered."""
    ids = {}
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for i, node in enumerate(tree.iter_nodes()):
        ids[node.path] = f"n{i}"
        shape = ", shape=box" if node.is_leaf else ""
        lines.append(f"  n{i} [label={_quote(_node_label(node))}{shape}];")
    for node in tree.iter_nodes():
        for letter, child in node.children:
            lines.append(f"  {ids[node.path]} -> {ids[child.path]} [label={_quote(letter)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
