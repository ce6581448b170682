class LogisticRegression:
  """Logistic Regression classifier.

  Parameters
  ------

  solver : str, {'linear', 'sag', 'lbfgs'}, \
            optional (default='linear').
    Algorithm for optimization.
    - Solvers 'sag' and 'lbfgs' support only l2.

  penalty : str, 'l1' or 'l2', default: 'l2'
    Norm used in the penalization. 
    The 'sag' and 'lbfgs' solvers support 
    only l2 penalties.

  C : float, default: 1.0
    Inverse regularization strength; 
    must be a positive float. 
    Like in support vector machines, smaller
    values specify stronger regularization
  """
  
  def __init__(self, solver='warn', 
               penalty='l2', C=1.0, ...):
    self.solver = solver
    self.penalty = penalty
    self.C = C
    ...
