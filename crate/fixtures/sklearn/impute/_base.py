import numpy as np


class SimpleImputer:
    """Imputation transformer for completing missing values.

    Parameters
    ----------
    missing_values : number, string, np.nan (default) or None
        The placeholder for the missing values. All occurrences of
        `missing_values` will be imputed.

    strategy : string, optional (default="mean")
        The imputation strategy.

    fill_value : string or numerical value, optional (default=None)
        When strategy == "constant", fill_value is used to replace all
        occurrences of missing_values.

    copy : boolean, optional (default=True)
        If True, a copy of X will be created.
    """

    def __init__(self, missing_values=np.nan, strategy="mean",
                 fill_value=None, copy=True):
        self.missing_values = missing_values
        self.strategy = strategy
        self.fill_value = fill_value
        self.copy = copy
