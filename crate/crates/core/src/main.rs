// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(qhvar::cli::run(std::env::args_os()));
}
