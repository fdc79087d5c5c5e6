/// Representative invocations of every command, including error cases.
pub const INVOCATIONS: &[&[&str]] = &[
    &["hermite", "(3*x^2+1)/((x-1)^2*(x+2))", "--verify"],
    &["residues", "2*x/(x^2-2)"],
    &["dep-add", "1/x"],
    &["dep-add", "1/x^2", "--verify"],
    &["dep-add-multi", "1/x", "1/(x+1)", "--verify"],
    &["dep-add-multi", "--ctx", "param-shift", "1/(x+t)"],
    &["galois-add", "--ctx", "qdiff-ddx", "1/x^3"],
    &["dep-mul", "1/(2*x)", "--verify"],
    &["dep-mul", "--ctx", "qdiff-ddx", "--q", "2", "1", "--verify"],
    &["ishizaki", "--ctx", "qdiff-euler", "1/2", "x", "--verify"],
    &["ishizaki", "--ctx", "qdiff-euler", "2", "x^2", "--verify"],
    &["ratsols-ode", "x^2*D^2 - 2*x*D + 2", "--verify"],
    &["ratsols-ode", "D - 1/x", "--rhs", "1", "--verify"],
    &["ratsols-rec", "t*S - (t+1)", "--verify"],
    &["sympower", "D^2 - x"],
    &["integrable", "[[0, 1], [3, 0]]", "--d", "2", "--verify"],
    &["integrable", "[[0, 1], [x, 0]]", "--d-max", "2"],
    &["order2", "x", "--s", "1"],
    &["order2", "x", "--s", "0", "--verify"],
    &["airy", "--s", "1..3"],
    &["airy", "--s", "symbolic"],
    &["dichotomy", "D^2 - x", "--d-max", "2"],
    &["skew-gcd", "S^2 - 1", "S - 1", "--verify"],
    &["ga-member", "S^2 - 1", "S - 1"],
    &["mup-period", "--p", "5", "--exponents", "2,1"],
    &["classify-gagm", "S^2 - S"],
    &["realize-ga", "S - 1", "--verify"],
    // errors
    &["dep-add", "q/x"],
    &["dep-add", "1/x +"],
    &["realize-ga", "S^2 - 1"],
    &["mup-period", "--p", "9", "--exponents", "1,1"],
    &["dep-mul", "--ctx", "qdiff-ddx", "--q", "1", "x"],
];
