class Truncated:
    """A docstring that never ends.

    Parameters
    ----------
    x : int
        Lost.

    def __init__(self, x=1):
        self.x = x
