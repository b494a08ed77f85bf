from hypothesis import strategies as st


def elements(W):
    return st.integers(0, W.order - 1).map(lambda k: W.elements[k])


def letters(W):
    return st.sampled_from(sorted(W.gens))


def words(W, max_size=10):
    return st.lists(letters(W), max_size=max_size)


def w(W, *letters):
    """Element from letters: ``w(A2, 1, 2)`` or ``w(A2, "12")``."""
    if len(letters) == 1 and isinstance(letters[0], str):
        letters = tuple(int(c) for c in letters[0])
    return W.word(letters)
