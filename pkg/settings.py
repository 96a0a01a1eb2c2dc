# Site configuration

# Model space used by `cometric` and the randers/modelspace suites when no
# --space file is given. Basis strings are sympy expressions in x, y on the unit square.
default_space = {
    "grid": {"nx": 64, "ny": 64},
    "basis": [
        "(2 + x) * exp(I*pi*y)",
        "(1.5 + y) * exp(I*pi*x/2)",
    ],
    "seed": 0,
}
