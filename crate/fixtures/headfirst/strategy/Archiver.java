package headfirst.strategy;

public class Archiver {
    protected Compressor compressor;

    public void setCompressor(Compressor compressor) {
        this.compressor = compressor;
    }

    public Compressor getCompressor() {
        return compressor;
    }

    public byte[] archive(byte[] data) {
        return compressor.compress(data);
    }

    public String fileName(String base) {
        return base + "." + compressor.extension();
    }
}
