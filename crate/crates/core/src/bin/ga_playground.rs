//! Playground session service over standard streams or TCP.

use std::io;
use std::process::ExitCode;

use clap::Parser;

use cga_motion::algebra::blade::cayley_dump;
use cga_motion::playground::transport::{serve, serve_tcp, Framing};
use cga_motion::playground::Session;

#[derive(Debug, Parser)]
#[command(name = "ga-playground", about = "Serve the ga-playground/1 protocol")]
struct Args {
    /// Serve one session over stdin/stdout (the default).
    #[arg(long, conflicts_with = "port")]
    stdio: bool,
    /// Listen on 127.0.0.1:<PORT>, one session per connection.
    #[arg(long)]
    port: Option<u16>,
    /// One JSON document per line instead of length-prefixed frames.
    #[arg(long)]
    lines: bool,
    /// Print the Cayley table of the geometric product and exit.
    #[arg(long)]
    dump_cayley: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.dump_cayley {
        print!("{}", cayley_dump());
        return ExitCode::SUCCESS;
    }
    let framing = if args.lines {
        Framing::Lines
    } else {
        Framing::LengthPrefixed
    };
    let result = match args.port {
        Some(port) => serve_tcp(("127.0.0.1", port), framing),
        None => serve(&mut Session::new(), io::stdin().lock(), io::stdout().lock(), framing),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ga-playground: {e}");
            ExitCode::FAILURE
        }
    }
}
