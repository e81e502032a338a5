# Copyright 2026 The adtred Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs an SMT-LIB script from stdin through the cvc5 Python API.

Behaves like `cvc5 --lang smt2 -`: responses go to stdout. Used as the
interpolation backend (get-interpolant) when no cvc5 binary is installed.
"""

import sys

try:
    import cvc5
except ImportError:
    sys.stdout.write('(error "cvc5 Python module not installed")\n')
    sys.exit(3)


def main():
    text = sys.stdin.read()
    solver = cvc5.Solver()
    solver.setOption("produce-models", "true")
    if hasattr(solver, "getTermManager"):
        symbols = cvc5.SymbolManager(solver.getTermManager())
    else:
        symbols = cvc5.SymbolManager(solver)
    parser = cvc5.InputParser(solver, symbols)
    parser.setStringInput(cvc5.InputLanguage.SMT_LIB_2_6, text, "stdin")
    try:
        while True:
            cmd = parser.nextCommand()
            if cmd.isNull():
                break
            sys.stdout.write(cmd.invoke(solver, symbols))
    except RuntimeError as e:
        message = str(e).replace('"', "'")
        sys.stdout.write('(error "%s")\n' % message)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
