//! Byte-stream transports for the playground protocol.
//!
//! The default framing is a 4-byte little-endian length followed by that
//! many bytes of UTF-8 JSON, in both directions. Line framing (one JSON
//! document per line) is available for manual use.

use std::io::{self, BufRead, BufReader, Read, Write};
use std::net::{TcpListener, ToSocketAddrs};
use std::thread;

use super::Session;

/// Largest accepted frame.
pub const MAX_FRAME_BYTES: usize = 16 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Framing {
    LengthPrefixed,
    Lines,
}

/// Reads one length-prefixed frame; `None` on a clean end of stream.
pub fn read_frame<R: Read>(r: &mut R) -> io::Result<Option<Vec<u8>>> {
    let mut len = [0u8; 4];
    match r.read_exact(&mut len) {
        Ok(()) => {}
        Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => return Ok(None),
        Err(e) => return Err(e),
    }
    let len = u32::from_le_bytes(len) as usize;
    if len > MAX_FRAME_BYTES {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("frame of {len} bytes too large"),
        ));
    }
    let mut buf = vec![0; len];
    r.read_exact(&mut buf)?;
    Ok(Some(buf))
}

pub fn write_frame<W: Write>(w: &mut W, payload: &[u8]) -> io::Result<()> {
    let len =
        u32::try_from(payload.len()).map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "frame too large"))?;
    w.write_all(&len.to_le_bytes())?;
    w.write_all(payload)?;
    w.flush()
}

/// Serves one session over a byte stream until the reader is exhausted.
/// Requests are handled strictly in order.
pub fn serve<R: Read, W: Write>(session: &mut Session, reader: R, mut writer: W, framing: Framing) -> io::Result<()> {
    match framing {
        Framing::LengthPrefixed => {
            let mut reader = reader;
            while let Some(frame) = read_frame(&mut reader)? {
                let text = String::from_utf8_lossy(&frame);
                write_frame(&mut writer, session.handle_json(&text).as_bytes())?;
            }
        }
        Framing::Lines => {
            for line in BufReader::new(reader).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                writeln!(writer, "{}", session.handle_json(&line))?;
                writer.flush()?;
            }
        }
    }
    Ok(())
}

/// Accepts TCP connections forever, one session and one thread each.
pub fn serve_tcp<A: ToSocketAddrs>(addr: A, framing: Framing) -> io::Result<()> {
    let listener = TcpListener::bind(addr)?;
    log::info!("listening on {}", listener.local_addr()?);
    for stream in listener.incoming() {
        let stream = stream?;
        thread::spawn(move || {
            let peer = stream.peer_addr().ok();
            let result = stream
                .try_clone()
                .and_then(|reader| serve(&mut Session::new(), reader, stream, framing));
            if let Err(e) = result {
                log::warn!("connection {peer:?} ended with error: {e}");
            }
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_prefixed_session() {
        let mut input = Vec::new();
        for req in [
            r#"{"schema":"ga-playground/1","id":1,"op":"create_primitive","name":"p","primitive":{"type":"point","position":{"x":1.0,"y":2.0,"z":3.0}}}"#,
            r#"{"schema":"ga-playground/1","id":2,"op":"list"}"#,
        ] {
            write_frame(&mut input, req.as_bytes()).unwrap();
        }
        let mut output = Vec::new();
        serve(
            &mut Session::new(),
            input.as_slice(),
            &mut output,
            Framing::LengthPrefixed,
        )
        .unwrap();
        let mut cursor = output.as_slice();
        let first = read_frame(&mut cursor).unwrap().unwrap();
        let second = read_frame(&mut cursor).unwrap().unwrap();
        assert!(read_frame(&mut cursor).unwrap().is_none());
        let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
        assert_eq!(v["id"], 1);
        assert_eq!(v["objects"][0]["kind"], "point");
        let v: serde_json::Value = serde_json::from_slice(&second).unwrap();
        assert_eq!(v["objects"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn oversized_frame_rejected() {
        let bytes = (MAX_FRAME_BYTES as u32 + 1).to_le_bytes();
        assert!(read_frame(&mut bytes.as_slice()).is_err());
    }
}
