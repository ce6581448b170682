class BaseGradientBoosting:
    """Abstract base class for Gradient Boosting."""

    def __init__(self, loss, learning_rate):
        self.loss = loss
        self.learning_rate = learning_rate


class GradientBoostingClassifier(BaseGradientBoosting):
    """Gradient Boosting for classification.

    Parameters
    ----------
    loss : {'deviance', 'exponential'}, optional (default='deviance')
        loss function to be optimized.

    learning_rate : float, optional (default=0.1)
        learning rate shrinks the contribution of each tree by `learning_rate`.

    n_estimators : int (default=100)
        The number of boosting stages to perform.

    criterion : string, optional (default="friedman_mse")
        The function to measure the quality of a split.

    max_features : int, float, string or None, optional (default=None)
        The number of features to consider when looking for the best split.

    alpha : float (default=0.9)
        The alpha-quantile of the huber loss function and the quantile
        loss function. Only if ``loss='huber'`` or ``loss='quantile'``.

    subsample : float, optional (default=1.0)
        The fraction of samples to be used for fitting the individual base
        learners. Choosing `subsample < 1.0` leads to Stochastic Gradient
        Boosting. Only relevant for some losses, and only in a few cases.

    warm_start : bool, default: False
        When set to ``True``, reuse the solution of the previous call to fit.
    """

    def __init__(self, loss='deviance', learning_rate=0.1, n_estimators=100,
                 criterion='friedman_mse', max_features=None, alpha=0.9,
                 subsample=1.0, warm_start=False):
        super().__init__(loss=loss, learning_rate=learning_rate)
        self.n_estimators = n_estimators
        self.criterion = criterion
        self.max_features = max_features
        self.alpha = alpha
        self.subsample = subsample
        self.warm_start = warm_start


class GradientBoostingClassifierCV(GradientBoostingClassifier):
    """Cross-validated variant, excluded by configuration."""
