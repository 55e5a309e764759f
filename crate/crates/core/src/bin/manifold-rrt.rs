/*
  Copyright 2026 The manifold-rrt Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

use std::io::Write;
use std::process::ExitCode;

use manifold_rrt::bench::cli::parse_cli;
use manifold_rrt::bench::{run_experiment, OutputFormat};

fn main() -> ExitCode {
    let cfg = match parse_cli(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(e) => {
            if e.exit_code == 0 {
                print!("{}", e.message);
                return ExitCode::SUCCESS;
            }
            eprint!("{}", e.message);
            if !e.message.ends_with('\n') {
                eprintln!();
            }
            return ExitCode::from(2);
        }
    };
    let report = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    if cfg.out.is_none() {
        let text = match cfg.format {
            OutputFormat::Csv => report.to_csv(),
            OutputFormat::Json => report.to_json(),
        };
        if std::io::stdout().write_all(text.as_bytes()).is_err() {
            return ExitCode::FAILURE;
        }
    }
    ExitCode::SUCCESS
}
