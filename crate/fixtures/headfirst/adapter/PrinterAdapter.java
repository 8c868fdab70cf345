package headfirst.adapter;

public class PrinterAdapter implements Printer {
    private final LegacyPrinter legacy;

    public PrinterAdapter(LegacyPrinter legacy) {
        this.legacy = legacy;
    }

    @Override
    public void print(String text) {
        legacy.printLegacy(text.toCharArray());
    }
}
