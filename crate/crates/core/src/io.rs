//! Trace ingestion and verdict emission.
//!
//! Two trace encodings feed a monitor: newline-delimited JSON objects keyed by
//! predicate name, and a binary file of fixed-size bitfield records. Both are
//! read one record at a time into a reused positional value buffer.
//!
//! Binary layout, all integers little-endian:
//!
//! ```text
//! header  "LRVB" | version u16 | mode u8 | count u16 | count x (len u16, utf-8 name)
//! record  time u64 | ceil(count/8) bytes, predicate i at bit i%8 of byte i/8
//! ```
//!
//! In dense mode a record at time `T` ends the previous segment and starts a
//! new one; the final record only marks where the trace ends.

use std::collections::HashMap;
use std::fmt;
use std::io::{self, BufRead, Read, Write};

use serde::de::{self, DeserializeSeed, IgnoredAny, MapAccess, Visitor};
use thiserror::Error;

use crate::compiler::{CompiledMonitor, TimeModel};
use crate::engine::{DenseVerdicts, EngineError, EvalSession};
use crate::intervals::Interval;
use crate::syntax::{PredicateTable, Time};

pub const MAGIC: [u8; 4] = *b"LRVB";
pub const FORMAT_VERSION: u16 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceFormat {
    Json,
    Binary,
}

impl fmt::Display for TraceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceFormat::Json => "json",
            TraceFormat::Binary => "bin",
        })
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Json { line: usize, message: String },
    #[error("line {line}: missing \"time\"")]
    MissingTime { line: usize },
    #[error("record {record}: time {got} does not advance past {previous}")]
    TimeRegression { record: usize, previous: Time, got: Time },
    #[error("record {record}: truncated after {have} of {need} bytes")]
    Truncated { record: usize, have: usize, need: usize },
    #[error("bad header: {0}")]
    Header(String),
    #[error("trace is {found} but the monitor expects {expected}")]
    ModeMismatch { expected: TimeModel, found: TimeModel },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn mode_byte(m: TimeModel) -> u8 {
    match m {
        TimeModel::Discrete => 0,
        TimeModel::Dense => 1,
    }
}

fn byte_mode(b: u8) -> Option<TimeModel> {
    match b {
        0 => Some(TimeModel::Discrete),
        1 => Some(TimeModel::Dense),
        _ => None,
    }
}

/// Name-to-position index shared by the JSON readers.
pub fn name_index(table: &PredicateTable) -> HashMap<String, usize> {
    table
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect()
}

enum Key {
    Time,
    Pred(usize),
    Unknown,
}

struct KeySeed<'a>(&'a HashMap<String, usize>);

impl<'de> DeserializeSeed<'de> for KeySeed<'_> {
    type Value = Key;

    fn deserialize<D: de::Deserializer<'de>>(self, d: D) -> Result<Key, D::Error> {
        d.deserialize_str(self)
    }
}

impl Visitor<'_> for KeySeed<'_> {
    type Value = Key;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a field name")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Key, E> {
        Ok(match v {
            "time" => Key::Time,
            _ => self.0.get(v).map_or(Key::Unknown, |&i| Key::Pred(i)),
        })
    }
}

struct Flag;

impl<'de> DeserializeSeed<'de> for Flag {
    type Value = bool;

    fn deserialize<D: de::Deserializer<'de>>(self, d: D) -> Result<bool, D::Error> {
        d.deserialize_any(self)
    }
}

impl Visitor<'_> for Flag {
    type Value = bool;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0, 1, true or false")
    }

    fn visit_bool<E: de::Error>(self, v: bool) -> Result<bool, E> {
        Ok(v)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<bool, E> {
        match v {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(E::invalid_value(de::Unexpected::Unsigned(v), &self)),
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<bool, E> {
        match v {
            0 | 1 => self.visit_u64(v as u64),
            _ => Err(E::invalid_value(de::Unexpected::Signed(v), &self)),
        }
    }
}

struct RecordSeed<'a> {
    index: &'a HashMap<String, usize>,
    values: &'a mut [bool],
    unknown: &'a mut u64,
}

impl<'de> DeserializeSeed<'de> for RecordSeed<'_> {
    type Value = Option<Time>;

    fn deserialize<D: de::Deserializer<'de>>(self, d: D) -> Result<Option<Time>, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de> Visitor<'de> for RecordSeed<'_> {
    type Value = Option<Time>;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a trace record object")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Option<Time>, A::Error> {
        let mut time = None;
        while let Some(key) = map.next_key_seed(KeySeed(self.index))? {
            match key {
                Key::Time => time = Some(map.next_value::<u64>()?),
                Key::Pred(i) => self.values[i] = map.next_value_seed(Flag)?,
                Key::Unknown => {
                    *self.unknown += 1;
                    map.next_value::<IgnoredAny>()?;
                }
            }
        }
        Ok(time)
    }
}

/// Decodes one JSON record into `values`, which must hold the previous
/// valuation in dense mode. Returns the time and the number of unknown keys.
pub fn read_json_record(
    line: &str,
    index: &HashMap<String, usize>,
    mode: TimeModel,
    values: &mut [bool],
    line_no: usize,
) -> Result<(Time, u64), TraceError> {
    if mode == TimeModel::Discrete {
        values.fill(false);
    }
    let mut unknown = 0;
    let mut de = serde_json::Deserializer::from_str(line);
    let seed = RecordSeed {
        index,
        values,
        unknown: &mut unknown,
    };
    let time = seed
        .deserialize(&mut de)
        .and_then(|t| de.end().map(|_| t))
        .map_err(|e| TraceError::Json {
            line: line_no,
            message: e.to_string(),
        })?;
    let time = time.ok_or(TraceError::MissingTime { line: line_no })?;
    Ok((time, unknown))
}

/// A pull source of positional records.
pub trait RecordSource {
    /// The next `(time, values)` pair, or `None` at end of input.
    fn next_record(&mut self) -> Result<Option<(Time, &[bool])>, TraceError>;
    /// Keys or header names that matched no predicate.
    fn unknown_keys(&self) -> u64;
}

pub struct JsonReader<R> {
    input: R,
    index: HashMap<String, usize>,
    mode: TimeModel,
    values: Vec<bool>,
    line: String,
    line_no: usize,
    records: usize,
    last: Option<Time>,
    unknown: u64,
}

impl<R: BufRead> JsonReader<R> {
    pub fn new(input: R, table: &PredicateTable, mode: TimeModel) -> Self {
        JsonReader {
            input,
            index: name_index(table),
            mode,
            values: vec![false; table.len()],
            line: String::new(),
            line_no: 0,
            records: 0,
            last: None,
            unknown: 0,
        }
    }
}

impl<R: BufRead> RecordSource for JsonReader<R> {
    fn next_record(&mut self) -> Result<Option<(Time, &[bool])>, TraceError> {
        loop {
            self.line.clear();
            if self.input.read_line(&mut self.line)? == 0 {
                return Ok(None);
            }
            self.line_no += 1;
            if !self.line.trim().is_empty() {
                break;
            }
        }
        let (t, unknown) = read_json_record(
            self.line.trim_end(),
            &self.index,
            self.mode,
            &mut self.values,
            self.line_no,
        )?;
        self.unknown += unknown;
        check_order(&mut self.last, t, self.records)?;
        self.records += 1;
        Ok(Some((t, &self.values)))
    }

    fn unknown_keys(&self) -> u64 {
        self.unknown
    }
}

fn check_order(last: &mut Option<Time>, t: Time, record: usize) -> Result<(), TraceError> {
    if let Some(prev) = *last {
        if t <= prev {
            return Err(TraceError::TimeRegression {
                record,
                previous: prev,
                got: t,
            });
        }
    }
    *last = Some(t);
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryHeader {
    pub version: u16,
    pub mode: TimeModel,
    pub names: Vec<String>,
}

impl BinaryHeader {
    pub fn new(mode: TimeModel, names: Vec<String>) -> Self {
        BinaryHeader {
            version: FORMAT_VERSION,
            mode,
            names,
        }
    }

    pub fn bitfield_len(&self) -> usize {
        self.names.len().div_ceil(8)
    }

    pub fn record_len(&self) -> usize {
        8 + self.bitfield_len()
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(&MAGIC)?;
        w.write_all(&self.version.to_le_bytes())?;
        w.write_all(&[mode_byte(self.mode)])?;
        w.write_all(&(self.names.len() as u16).to_le_bytes())?;
        for n in &self.names {
            w.write_all(&(n.len() as u16).to_le_bytes())?;
            w.write_all(n.as_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self, TraceError> {
        let bad = |m: &str| TraceError::Header(m.to_string());
        let mut fixed = [0u8; 9];
        r.read_exact(&mut fixed).map_err(|_| bad("header shorter than 9 bytes"))?;
        if fixed[..4] != MAGIC {
            return Err(bad("magic is not LRVB"));
        }
        let version = u16::from_le_bytes([fixed[4], fixed[5]]);
        if version != FORMAT_VERSION {
            return Err(TraceError::Header(format!("unsupported version {version}")));
        }
        let mode = byte_mode(fixed[6]).ok_or_else(|| bad("mode byte is neither 0 nor 1"))?;
        let count = u16::from_le_bytes([fixed[7], fixed[8]]) as usize;
        let mut names = Vec::with_capacity(count);
        for _ in 0..count {
            let mut len = [0u8; 2];
            r.read_exact(&mut len).map_err(|_| bad("truncated name length"))?;
            let mut buf = vec![0u8; u16::from_le_bytes(len) as usize];
            r.read_exact(&mut buf).map_err(|_| bad("truncated name"))?;
            let name = String::from_utf8(buf).map_err(|_| bad("name is not UTF-8"))?;
            if names.contains(&name) {
                return Err(TraceError::Header(format!("duplicate name `{name}`")));
            }
            names.push(name);
        }
        Ok(BinaryHeader {
            version,
            mode,
            names,
        })
    }
}

/// Packs values LSB-first into `out`, which must be `ceil(n/8)` bytes.
pub fn pack_bits(values: &[bool], out: &mut [u8]) {
    out.fill(0);
    for (i, &v) in values.iter().enumerate() {
        out[i / 8] |= u8::from(v) << (i % 8);
    }
}

/// Decodes one record laid out per `header`, positions as in the header.
pub fn read_binary_record(bytes: &[u8], header: &BinaryHeader) -> Result<(Time, Vec<bool>), TraceError> {
    let need = header.record_len();
    if bytes.len() < need {
        return Err(TraceError::Truncated {
            record: 0,
            have: bytes.len(),
            need,
        });
    }
    let time = Time::from_le_bytes(bytes[..8].try_into().expect("eight bytes"));
    let values = (0..header.names.len())
        .map(|i| bytes[8 + i / 8] >> (i % 8) & 1 == 1)
        .collect();
    Ok((time, values))
}

pub struct BinaryReader<R> {
    input: R,
    header: BinaryHeader,
    /// Monitor position of each header column.
    slots: Vec<Option<usize>>,
    buf: Vec<u8>,
    values: Vec<bool>,
    records: usize,
    last: Option<Time>,
    unknown: u64,
}

impl<R: Read> BinaryReader<R> {
    /// Reads the header and maps its columns onto `table`.
    pub fn new(mut input: R, table: &PredicateTable, mode: TimeModel) -> Result<Self, TraceError> {
        let header = BinaryHeader::read_from(&mut input)?;
        if header.mode != mode {
            return Err(TraceError::ModeMismatch {
                expected: mode,
                found: header.mode,
            });
        }
        let slots: Vec<Option<usize>> = header.names.iter().map(|n| table.position(n)).collect();
        let unknown = slots.iter().filter(|s| s.is_none()).count() as u64;
        Ok(BinaryReader {
            input,
            buf: vec![0; header.record_len()],
            header,
            slots,
            values: vec![false; table.len()],
            records: 0,
            last: None,
            unknown,
        })
    }

    pub fn header(&self) -> &BinaryHeader {
        &self.header
    }
}

impl<R: Read> RecordSource for BinaryReader<R> {
    fn next_record(&mut self) -> Result<Option<(Time, &[bool])>, TraceError> {
        let mut have = 0;
        while have < self.buf.len() {
            match self.input.read(&mut self.buf[have..]) {
                Ok(0) => break,
                Ok(n) => have += n,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(e) => return Err(e.into()),
            }
        }
        if have == 0 {
            return Ok(None);
        }
        if have < self.buf.len() {
            return Err(TraceError::Truncated {
                record: self.records,
                have,
                need: self.buf.len(),
            });
        }
        let t = Time::from_le_bytes(self.buf[..8].try_into().expect("eight bytes"));
        for (i, slot) in self.slots.iter().enumerate() {
            if let Some(p) = *slot {
                self.values[p] = self.buf[8 + i / 8] >> (i % 8) & 1 == 1;
            }
        }
        check_order(&mut self.last, t, self.records)?;
        self.records += 1;
        Ok(Some((t, &self.values)))
    }

    fn unknown_keys(&self) -> u64 {
        self.unknown
    }
}

/// Streaming encoder for either trace format.
pub struct TraceWriter<W: Write> {
    out: W,
    format: TraceFormat,
    names: Vec<String>,
    bits: Vec<u8>,
    line: String,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(mut out: W, format: TraceFormat, mode: TimeModel, names: &[String]) -> io::Result<Self> {
        if format == TraceFormat::Binary {
            BinaryHeader::new(mode, names.to_vec()).write_to(&mut out)?;
        }
        Ok(TraceWriter {
            out,
            format,
            names: names.to_vec(),
            bits: vec![0; names.len().div_ceil(8)],
            line: String::new(),
        })
    }

    pub fn write_record(&mut self, time: Time, values: &[bool]) -> io::Result<()> {
        match self.format {
            TraceFormat::Binary => {
                pack_bits(values, &mut self.bits);
                self.out.write_all(&time.to_le_bytes())?;
                self.out.write_all(&self.bits)
            }
            TraceFormat::Json => {
                use std::fmt::Write as _;
                self.line.clear();
                let _ = write!(self.line, "{{\"time\":{time}");
                for (n, &v) in self.names.iter().zip(values) {
                    let _ = write!(self.line, ",{}:{}", serde_json::Value::from(n.as_str()), u8::from(v));
                }
                self.line.push_str("}\n");
                self.out.write_all(self.line.as_bytes())
            }
        }
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// A whole trace held in memory, values stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceData {
    pub names: Vec<String>,
    pub mode: TimeModel,
    pub times: Vec<Time>,
    pub values: Vec<bool>,
}

impl TraceData {
    pub fn new(names: Vec<String>, mode: TimeModel) -> Self {
        TraceData {
            names,
            mode,
            times: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn push(&mut self, time: Time, values: &[bool]) {
        assert_eq!(values.len(), self.names.len());
        self.times.push(time);
        self.values.extend_from_slice(values);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn row(&self, i: usize) -> &[bool] {
        let n = self.names.len();
        &self.values[i * n..(i + 1) * n]
    }

    pub fn table(&self) -> PredicateTable {
        PredicateTable::from_names(self.names.iter().cloned())
    }

    pub fn write<W: Write>(&self, out: W, format: TraceFormat) -> io::Result<W> {
        let mut w = TraceWriter::new(out, format, self.mode, &self.names)?;
        for i in 0..self.len() {
            w.write_record(self.times[i], self.row(i))?;
        }
        w.finish()
    }

    pub fn encode(&self, format: TraceFormat) -> Vec<u8> {
        self.write(Vec::new(), format).expect("writing to memory")
    }

    /// Decodes a binary trace using the header's own column order.
    pub fn decode_binary(bytes: &[u8]) -> Result<Self, TraceError> {
        let mut cursor = bytes;
        let header = BinaryHeader::read_from(&mut cursor)?;
        let table = PredicateTable::from_names(header.names.iter().cloned());
        let mut reader = BinaryReader::new(bytes, &table, header.mode)?;
        let mut data = TraceData::new(header.names, header.mode);
        while let Some((t, v)) = reader.next_record()? {
            data.push(t, v);
        }
        Ok(data)
    }

    pub fn decode_json(text: &str, names: Vec<String>, mode: TimeModel) -> Result<Self, TraceError> {
        let table = PredicateTable::from_names(names.iter().cloned());
        let mut reader = JsonReader::new(text.as_bytes(), &table, mode);
        let mut data = TraceData::new(names, mode);
        while let Some((t, v)) = reader.next_record()? {
            data.push(t, v);
        }
        Ok(data)
    }
}

/// Writes discrete verdicts as `time,y1,…,ym` lines.
pub struct CsvVerdictWriter<W: Write> {
    out: W,
    line: Vec<u8>,
}

impl<W: Write> CsvVerdictWriter<W> {
    pub fn new(out: W) -> Self {
        CsvVerdictWriter {
            out,
            line: Vec::with_capacity(64),
        }
    }

    pub fn write_step(&mut self, time: Time, verdicts: &[bool]) -> io::Result<()> {
        self.line.clear();
        write!(self.line, "{time}")?;
        for &v in verdicts {
            self.line.extend_from_slice(if v { b",1" } else { b",0" });
        }
        self.line.push(b'\n');
        self.out.write_all(&self.line)
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Writes dense verdicts as one JSON line per maximal true interval,
/// merging intervals that continue across segment boundaries.
pub struct IntervalVerdictWriter<W: Write> {
    out: W,
    open: Vec<Option<Interval>>,
}

impl<W: Write> IntervalVerdictWriter<W> {
    pub fn new(out: W, properties: usize) -> Self {
        IntervalVerdictWriter {
            out,
            open: vec![None; properties],
        }
    }

    fn emit(&mut self, k: usize, iv: Interval) -> io::Result<()> {
        writeln!(
            self.out,
            "{{\"property\":{},\"begin\":{},\"end\":{}}}",
            k + 1,
            iv.begin,
            iv.end
        )
    }

    /// Consumes property `k`'s output for the segment ending at `segment_end`.
    pub fn push(&mut self, k: usize, set: &[Interval], segment_end: Time) -> io::Result<()> {
        for &iv in set {
            match self.open[k] {
                Some(ref mut o) if o.end == iv.begin => o.end = iv.end,
                Some(o) => {
                    self.emit(k, o)?;
                    self.open[k] = Some(iv);
                }
                None => self.open[k] = Some(iv),
            }
        }
        if let Some(o) = self.open[k] {
            if o.end < segment_end {
                self.emit(k, o)?;
                self.open[k] = None;
            }
        }
        Ok(())
    }

    /// Flushes intervals still open at the end of the stream.
    pub fn finish(mut self) -> io::Result<W> {
        for k in 0..self.open.len() {
            if let Some(o) = self.open[k].take() {
                self.emit(k, o)?;
            }
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Writes one discrete step of verdicts; see [`CsvVerdictWriter`].
pub fn write_verdicts<W: Write>(sink: &mut W, time: Time, verdicts: &[bool]) -> io::Result<()> {
    CsvVerdictWriter::new(sink).write_step(time, verdicts)
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("writing verdicts: {0}")]
    Output(#[from] io::Error),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub records: u64,
    pub steps: u64,
    pub unknown_keys: u64,
    pub high_water: usize,
    pub capacity: usize,
    pub alloc_counter: u64,
}

/// Opens a reader of the requested format over `input`.
pub fn open_source<'a, R: BufRead + 'a>(
    input: R,
    format: TraceFormat,
    table: &PredicateTable,
    mode: TimeModel,
) -> Result<Box<dyn RecordSource + 'a>, TraceError> {
    Ok(match format {
        TraceFormat::Json => Box::new(JsonReader::new(input, table, mode)),
        TraceFormat::Binary => Box::new(BinaryReader::new(input, table, mode)?),
    })
}

/// Output of one consumed record.
pub enum StepOutput<'a> {
    /// Verdicts of discrete step `time`.
    Discrete { time: Time, verdicts: &'a [bool] },
    /// Verdicts for the segment that ends at `end`.
    Dense { end: Time, verdicts: DenseVerdicts<'a> },
}

/// Feeds every record of `src` through a fresh session, handing each step's
/// verdicts to `on_step`. In dense mode a record at `T` closes the segment
/// opened by the previous record, so the first record only sets the origin.
pub fn feed<S, F>(monitor: &CompiledMonitor, src: &mut S, mut on_step: F) -> Result<RunStats, RunError>
where
    S: RecordSource + ?Sized,
    F: FnMut(StepOutput<'_>) -> io::Result<()>,
{
    let mut session = EvalSession::new(monitor);
    let mut records = 0u64;
    match monitor.time_model {
        TimeModel::Discrete => {
            while let Some((time, values)) = src.next_record()? {
                records += 1;
                let verdicts = session.update_discrete(time, values)?;
                on_step(StepOutput::Discrete { time, verdicts })?;
            }
        }
        TimeModel::Dense => {
            let mut held = vec![false; monitor.predicates.len()];
            while let Some((end, values)) = src.next_record()? {
                if records == 0 {
                    session.set_origin(end)?;
                } else {
                    let verdicts = session.update_dense(end, &held)?;
                    on_step(StepOutput::Dense { end, verdicts })?;
                }
                held.copy_from_slice(values);
                records += 1;
            }
        }
    }
    let arena = session.arena();
    Ok(RunStats {
        records,
        steps: session.steps(),
        unknown_keys: src.unknown_keys(),
        high_water: arena.high_water(),
        capacity: arena.capacity(),
        alloc_counter: arena.alloc_counter(),
    })
}

/// Runs `monitor` over `src`, writing CSV (discrete) or interval JSON lines (dense).
pub fn run_monitor<S, W>(monitor: &CompiledMonitor, src: &mut S, out: W) -> Result<RunStats, RunError>
where
    S: RecordSource + ?Sized,
    W: Write,
{
    match monitor.time_model {
        TimeModel::Discrete => {
            let mut w = CsvVerdictWriter::new(out);
            let stats = feed(monitor, src, |step| match step {
                StepOutput::Discrete { time, verdicts } => w.write_step(time, verdicts),
                StepOutput::Dense { .. } => unreachable!("discrete monitor"),
            })?;
            w.finish()?;
            Ok(stats)
        }
        TimeModel::Dense => {
            let mut w = IntervalVerdictWriter::new(out, monitor.property_count());
            let stats = feed(monitor, src, |step| match step {
                StepOutput::Dense { end, verdicts } => {
                    for k in 0..verdicts.len() {
                        w.push(k, verdicts.get(k), end)?;
                    }
                    Ok(())
                }
                StepOutput::Discrete { .. } => unreachable!("dense monitor"),
            })?;
            w.finish()?;
            Ok(stats)
        }
    }
}
