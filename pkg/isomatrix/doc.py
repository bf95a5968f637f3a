"""isomatrix

Search one-parameter families of pairs of Legendre curves for parameters where the two
fibers are isogenous and, at the same time, the marked points carry a small integer
relation. Modular polynomials are computed once and cached so that later runs can reuse
them.

Usage:
  isomatrix --help
  isomatrix --version
  isomatrix [--digits=N] [--certify-digits=N]
            [--threads=N] [--seed=N]
            [--format=FMT] [--output-file=PATH]
            [--force] [--verbose]
            <cmd> [<args>...]

Options:
  -h --help                 Show this screen.
  --version                 Show version.
  --digits=N                Working precision in decimal digits, see Files below.
  --certify-digits=N        Precision used to certify relations, at least twice --digits.
  --threads=N               Worker processes for scans and sample counts.
  --seed=N                  Seed for every random choice made during a run.
  --format=FMT              Findings format, 'json' (JSON lines) or 'csv'.
  --output-file=PATH        Write results to PATH instead of the terminal.
  --force                   Recompute modular polynomials even when they are cached.
  --verbose                 Log debugging information to stderr.
  <cmd>                     Run this command and exit.
  <args>                    Arguments to pass to the command being run, see 'help <cmd>' for details.

Commonly used commands:
    help [CMD]    Print all available commands. If a CMD is specified print the help for that command.
    check SPEC    Run the asymmetry and genericity checks on a curve spec.
    scan SPEC     Scan the rational parameters of a curve spec for certified findings.
    oracle SPEC N Print the exact N-isogeny locus of a curve spec and its rational roots.
    count-zt      Count synthetic log configurations that carry relations of growing size.
    modpoly N     Compute (or load) the modular polynomial of level N.

Environment Variables:
  ISOMATRIX_DIGITS:         Working precision to use when --digits is not given.

Files:
  ~/.isomatrix/.digits      Working precision to use when neither --digits nor
                            ISOMATRIX_DIGITS is given. Without any of them, 64 digits.

  ~/.isomatrix/cache/phi_<N>.txt
                            Modular polynomials computed in a prior run. Use the --force
                            switch to recompute them. It is safe to delete these files.
"""  # noqa501
