import numpy as np


class BaseMultilayerPerceptron:
    """Base class for MLP classification and regression."""

    def __init__(self, hidden_layer_sizes, activation):
        self.hidden_layer_sizes = hidden_layer_sizes
        self.activation = activation


class MLPClassifier(BaseMultilayerPerceptron):
    """Multi-layer Perceptron classifier.

    Parameters
    ----------
    hidden_layer_sizes : tuple, length = n_layers - 2, default (100,)
        The ith element represents the number of neurons in the ith
        hidden layer.

    activation : {'identity', 'logistic', 'tanh', 'relu'}, default 'relu'
        Activation function for the hidden layer.

    solver : {'lbfgs', 'sgd', 'adam'}, default 'adam'
        The solver for weight optimization.

    alpha : float, optional, default 0.0001
        L2 penalty (regularization term) parameter.

    learning_rate : {'constant', 'invscaling', 'adaptive'}, default 'constant'
        Learning rate schedule for weight updates.
        Only used when solver='sgd'.

    power_t : double, optional, default 0.5
        The exponent for inverse scaling learning rate.
        It is used in updating effective learning rate when
        the learning_rate is set to 'invscaling'.
        Only used when solver='sgd'.

    momentum : float, default 0.9
        Momentum for gradient descent update. Should be between 0 and 1.
        Only used when solver='sgd'.

    early_stopping : bool, default False
        Whether to use early stopping to terminate training when validation
        score is not improving. Only effective when solver='sgd' or 'adam'

    random_state : int, RandomState instance or None, optional, default None
        If int, random_state is the seed used by the random number generator.

    verbose : bool, optional, default False
        Whether to print progress messages to stdout.
    """

    def __init__(self, hidden_layer_sizes=(100,), activation="relu",
                 solver='adam', alpha=0.0001, learning_rate="constant",
                 power_t=0.5, momentum=0.9, early_stopping=False,
                 random_state=None, verbose=False):
        super().__init__(hidden_layer_sizes=hidden_layer_sizes,
                         activation=activation)
        self.solver = solver
        self.alpha = alpha
        self.learning_rate = learning_rate
        self.power_t = power_t
        self.momentum = momentum
        self.early_stopping = early_stopping
        self.random_state = random_state
        self.verbose = verbose

    def fit(self, X, y):
        """Fit the model to data matrix X and target(s) y.

        Parameters
        ----------
        X : array-like or sparse matrix, shape (n_samples, n_features)
            The input data.

        y : array-like, shape (n_samples,) or (n_samples, n_outputs)
            The target values.

        Returns
        -------
        self : returns a trained MLP model.
        """
        return self

    def predict(self, X):
        """Predict using the multi-layer perceptron classifier

        Parameters
        ----------
        X : {array-like, sparse matrix}, shape (n_samples, n_features)
            The input data.

        Returns
        -------
        y : array-like, shape (n_samples,) or (n_samples, n_classes)
            The predicted classes.
        """
        return X
