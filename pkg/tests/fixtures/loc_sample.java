// Session ledger for transfer bookkeeping.
// Records byte counts per channel and reports totals.
package sample.ledger;
import java.util.ArrayList;
import java.util.List;
/*
 * Tracks one transfer session.
 */
public class TransferLedger {
    private final List<String> channels = new ArrayList<String>();
    private long totalBytes; // running sum
    private int records;
    public void open(String channel) {
        channels.add(channel);
        records = records + 1;
    }
    public void add(long bytes) {
        if (bytes > 0) {
            totalBytes = totalBytes + bytes;
        }
    }
    /* per-channel report */ public String report(int index) {
        String name = channels.get(index);
        return name + "=" + totalBytes;
    }
    public long total() {
        return totalBytes;
    }
    public int count() {
        return records;
    }
    public boolean isIdle() {
        return records == 0;
    }
    // Drains every channel name into the sink builder.
    public String drain() {
        StringBuilder sink = new StringBuilder();
        for (int i = 0; i < channels.size(); i = i + 1) {
            sink.append(channels.get(i));
            sink.append(';');
        }
        channels.clear();
        return sink.toString();
    }
    public String describe() {
        String hot = "u // not a comment";
        return hot + records;
    }
    public void reset() {
        totalBytes = 0;
        records = 0;
        channels.clear();
    }
    public String banner() {
        return "ledger";
    }
}
