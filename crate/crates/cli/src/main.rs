// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

fn main() {
    let mut out = Vec::new();
    let code = ncdomain_cli::run(std::env::args_os(), &mut out);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = lock.write_all(&out);
    let _ = lock.flush();
    std::process::exit(code);
}
