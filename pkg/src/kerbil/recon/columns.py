ITERATION = "iteration"
"The outer iteration `n`, starting at 0 for the initial state."

OBJECTIVE = "objective"
"The recovery objective at the iterate."

GAMMA = "gamma"
"The step `gamma_n` held by the iterate."

CHANGE = "change"
"Relative Frobenius change of `D K_r B` from the previous iterate."

D_ITERATIONS = "d_iterations"
"Inner iterations of the `D` subproblem that produced the iterate."

B_ITERATIONS = "b_iterations"
"Inner iterations of the `B` subproblem that produced the iterate."
