pub(crate) const GL48_NODES: [f64; 48] = [
    -9.98771007252426068e-01,
    -9.93530172266350764e-01,
    -9.84124583722826851e-01,
    -9.70591592546247273e-01,
    -9.52987703160430910e-01,
    -9.31386690706554332e-01,
    -9.05879136715569633e-01,
    -8.76572020274247854e-01,
    -8.43588261624393487e-01,
    -8.07066204029442624e-01,
    -7.67159032515740358e-01,
    -7.24034130923814634e-01,
    -6.77872379632663891e-01,
    -6.28867396776513599e-01,
    -5.77224726083972683e-01,
    -5.23160974722232996e-01,
    -4.66902904750958414e-01,
    -4.08686481990716721e-01,
    -3.48755886292160755e-01,
    -2.87362487355455554e-01,
    -2.24763790394689050e-01,
    -1.61222356068891709e-01,
    -9.70046992094626970e-02,
    -3.23801709628693674e-02,
    3.23801709628693674e-02,
    9.70046992094626970e-02,
    1.61222356068891709e-01,
    2.24763790394689050e-01,
    2.87362487355455554e-01,
    3.48755886292160755e-01,
    4.08686481990716721e-01,
    4.66902904750958414e-01,
    5.23160974722232996e-01,
    5.77224726083972683e-01,
    6.28867396776513599e-01,
    6.77872379632663891e-01,
    7.24034130923814634e-01,
    7.67159032515740358e-01,
    8.07066204029442624e-01,
    8.43588261624393487e-01,
    8.76572020274247854e-01,
    9.05879136715569633e-01,
    9.31386690706554332e-01,
    9.52987703160430910e-01,
    9.70591592546247273e-01,
    9.84124583722826851e-01,
    9.93530172266350764e-01,
    9.98771007252426068e-01,
];
pub(crate) const GL48_WEIGHTS: [f64; 48] = [
    3.15334605230917957e-03,
    7.32755390127649234e-03,
    1.14772345792349736e-02,
    1.55793157229429276e-02,
    1.96161604573552965e-02,
    2.35707608393240925e-02,
    2.74265097083568818e-02,
    3.11672278327983394e-02,
    3.47772225647706573e-02,
    3.82413510658306741e-02,
    4.15450829434645535e-02,
    4.46745608566940997e-02,
    4.76166584924902839e-02,
    5.03590355538542783e-02,
    5.28901894851934867e-02,
    5.51995036999840538e-02,
    5.72772921004029295e-02,
    5.91148396983954827e-02,
    6.07044391658935825e-02,
    6.20394231598924636e-02,
    6.31141922862537841e-02,
    6.39242385846479494e-02,
    6.44661644359498381e-02,
    6.47376968126836816e-02,
    6.47376968126836816e-02,
    6.44661644359498381e-02,
    6.39242385846479494e-02,
    6.31141922862537841e-02,
    6.20394231598924636e-02,
    6.07044391658935825e-02,
    5.91148396983954827e-02,
    5.72772921004029295e-02,
    5.51995036999840538e-02,
    5.28901894851934867e-02,
    5.03590355538542783e-02,
    4.76166584924902839e-02,
    4.46745608566940997e-02,
    4.15450829434645535e-02,
    3.82413510658306741e-02,
    3.47772225647706573e-02,
    3.11672278327983394e-02,
    2.74265097083568818e-02,
    2.35707608393240925e-02,
    1.96161604573552965e-02,
    1.55793157229429276e-02,
    1.14772345792349736e-02,
    7.32755390127649234e-03,
    3.15334605230917957e-03,
];
